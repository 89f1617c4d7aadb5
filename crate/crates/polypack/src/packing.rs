//! Ball arrangement projections, duals, standard form and Gramians.

use nalgebra::{DMatrix, SymmetricEigen};
use thiserror::Error;

use crate::lorentz::{
    ball_from_light_source, classify_pair, euclidean_linear, geometry_from_ball, reflection, translation, Ball,
    BallGeometry, LVector, LorentzError, MobiusMap, Position,
};
use crate::numeric::{dot, Mat, NumericError, Scalar, FLOAT_TOL};
use crate::polytope::{regular_edge_scribed, FaceLattice, Polytope, PolytopeError, Solid};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PackingError {
    #[error("balls {0} and {1} are not externally tangent")]
    NotTangent(usize, usize),
    #[error("arrangement carries no face lattice")]
    MissingLattice,
    #[error("arrangement is not a packing")]
    NotPacking,
    #[error("Gramian has rank {0}, expected {1}")]
    NotMaximalRank(usize, usize),
    #[error("facet {0} has no space-like orthogonal ball")]
    DegenerateFacet(usize),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error(transparent)]
    Lorentz(#[from] LorentzError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// An ordered list of balls, optionally labelled by a polytope's vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct BallArrangement<S> {
    balls: Vec<Ball<S>>,
    lattice: Option<FaceLattice>,
    solid: Option<Solid>,
}

impl<S: Scalar> BallArrangement<S> {
    pub fn new(balls: Vec<Ball<S>>) -> Self {
        BallArrangement { balls, lattice: None, solid: None }
    }

    /// Ball `i` belongs to vertex `i` of the lattice.
    pub fn with_lattice(balls: Vec<Ball<S>>, lattice: FaceLattice, solid: Option<Solid>) -> Self {
        assert_eq!(balls.len(), lattice.vertex_count());
        BallArrangement { balls, lattice: Some(lattice), solid }
    }

    pub fn balls(&self) -> &[Ball<S>] {
        &self.balls
    }

    pub fn into_balls(self) -> Vec<Ball<S>> {
        self.balls
    }

    pub fn lattice(&self) -> Option<&FaceLattice> {
        self.lattice.as_ref()
    }

    pub fn solid(&self) -> Option<Solid> {
        self.solid
    }

    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.balls.first().map_or(0, Ball::dim)
    }

    pub fn curvatures(&self) -> Vec<S> {
        self.balls.iter().map(Ball::curvature).collect()
    }

    /// The image under a Möbius map, keeping labels.
    pub fn apply(&self, m: &MobiusMap<S>) -> Result<Self, PackingError> {
        let balls = self.balls.iter().map(|b| m.apply(b)).collect::<Result<_, _>>()?;
        Ok(BallArrangement { balls, lattice: self.lattice.clone(), solid: self.solid })
    }

    pub fn to_f64(&self) -> BallArrangement<f64> {
        BallArrangement { balls: self.balls.iter().map(Ball::to_f64).collect(), lattice: self.lattice.clone(), solid: self.solid }
    }
}

/// One ball per vertex, lit from the vertex.
pub fn project<S: Scalar>(p: &Polytope<S>) -> Result<BallArrangement<S>, PackingError> {
    let balls = p.vertices().iter().map(|u| ball_from_light_source(u)).collect::<Result<_, _>>()?;
    Ok(BallArrangement::with_lattice(balls, p.lattice().clone(), p.solid()))
}

/// Tangent-or-disjoint for every pair.
pub fn is_packing<S: Scalar>(a: &BallArrangement<S>) -> bool {
    let b = a.balls();
    (0..b.len()).all(|i| {
        (i + 1..b.len()).all(|j| classify_pair(&b[i], &b[j]).map(Position::is_packing_pair).unwrap_or(false))
    })
}

/// Pairs `(i, j)`, `i < j`, whose closed balls may meet: a sweep over
/// bounding boxes, with every unbounded ball paired to all others.
pub fn candidate_pairs<S: Scalar>(balls: &[Ball<S>]) -> Vec<(usize, usize)> {
    let mut boxes = Vec::new();
    let mut unbounded = Vec::new();
    for (i, b) in balls.iter().enumerate() {
        let k = b.curvature().to_f64();
        if k <= 1e-12 {
            unbounded.push(i);
            continue;
        }
        let x = b.coords();
        let r = 1.0 / k;
        let c: Vec<f64> = x[..b.dim()].iter().map(|t| t.to_f64() / k).collect();
        let slack = 1e-9 * (1.0 + r + c.iter().fold(0.0f64, |m, t| m.max(t.abs())));
        let lo: Vec<f64> = c.iter().map(|t| t - r - slack).collect();
        let hi: Vec<f64> = c.iter().map(|t| t + r + slack).collect();
        boxes.push((i, lo, hi));
    }
    boxes.sort_by(|a, b| a.1[0].total_cmp(&b.1[0]));
    let mut out = Vec::new();
    for (n, (i, lo, hi)) in boxes.iter().enumerate() {
        for (j, lo2, hi2) in &boxes[n + 1..] {
            if lo2[0] > hi[0] {
                break;
            }
            if (1..lo.len()).all(|t| lo2[t] <= hi[t] && lo[t] <= hi2[t]) {
                out.push(((*i).min(*j), (*i).max(*j)));
            }
        }
    }
    for (n, &i) in unbounded.iter().enumerate() {
        for j in 0..balls.len() {
            if j != i && !unbounded[..n].contains(&j) {
                out.push((i.min(j), i.max(j)));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// The first pair, in index order, that overlaps, nests or coincides.
pub fn first_overlap<S: Scalar>(balls: &[Ball<S>]) -> Option<(usize, usize, Position)> {
    candidate_pairs(balls).into_iter().find_map(|(i, j)| match classify_pair(&balls[i], &balls[j]) {
        Ok(p) if p.is_packing_pair() => None,
        Ok(p) => Some((i, j, p)),
        Err(_) => Some((i, j, Position::Overlapping)),
    })
}

/// Pairs `(i, j)`, `i < j`, whose balls are externally tangent.
pub fn tangency_pairs<S: Scalar>(a: &BallArrangement<S>) -> Vec<(usize, usize)> {
    let b = a.balls();
    let mut out = Vec::new();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if classify_pair(&b[i], &b[j]) == Ok(Position::ExternallyTangent) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Rotation of `E^n` taking the unit vector `a` to `e_{n}`.
fn rotation_to_north(a: &[f64]) -> Mat<f64> {
    let n = a.len();
    let c = a[n - 1];
    if c < -1.0 + 1e-12 {
        // half-turn in the (e_1, e_n) plane
        let mut diag = vec![1.0; n];
        diag[0] = -1.0;
        diag[n - 1] = -1.0;
        return Mat::diag(&diag);
    }
    // R x = x − ((a+b)·x)/(1+c) (a+b) + 2 (a·x) b with b = e_n
    let s: Vec<f64> = (0..n).map(|i| a[i] + if i == n - 1 { 1.0 } else { 0.0 }).collect();
    Mat::from_fn(n, n, |i, j| {
        let e = if i == j { 1.0 } else { 0.0 };
        let north = if i == n - 1 { 2.0 * a[j] } else { 0.0 };
        e - s[i] * s[j] / (1.0 + c) + north
    })
}

/// Projection of the edge-scribed realization with the first `k`-face
/// centered at infinity (barycenter on the ray through the north pole).
pub fn centered_projection(s: Solid, k: usize) -> Result<BallArrangement<f64>, PackingError> {
    let p = regular_edge_scribed::<f64>(s)?;
    if k >= p.dim() {
        return Err(PolytopeError::RankOutOfRange(k).into());
    }
    let bary = p.face_barycenter(k, 0)?;
    let norm = dot(&bary, &bary).sqrt();
    let a: Vec<f64> = bary.iter().map(|x| x / norm).collect();
    let r = rotation_to_north(&a);
    let rotated = Polytope::from_lattice(p.solid(), p.vertices().iter().map(|v| r.mul_vec(v)).collect(), p.lattice().clone());
    project(&rotated)
}

/// The dual arrangement: for each facet the ball orthogonal to the balls of
/// its vertices, oriented so the remaining balls have negative products.
pub fn dual<S: Scalar>(a: &BallArrangement<S>) -> Result<BallArrangement<S>, PackingError> {
    let lattice = a.lattice().ok_or(PackingError::MissingLattice)?;
    let n = a.dim() + 2;
    let mut out = Vec::with_capacity(lattice.facets().len());
    for (fi, f) in lattice.facets().iter().enumerate() {
        // rows Q·x_v so that row·y = <x_v, y>
        let rows = Mat::from_fn(f.len(), n, |i, j| {
            let x = a.balls()[f[i]].coords()[j].clone();
            if j == n - 1 {
                -x
            } else {
                x
            }
        });
        let ns = rows.null_space(FLOAT_TOL);
        if ns.len() != 1 {
            return Err(PackingError::DegenerateFacet(fi));
        }
        let y = LVector::new(ns.into_iter().next().unwrap());
        let yy = y.dot(&y);
        if yy.sign(FLOAT_TOL) <= 0 {
            return Err(PackingError::DegenerateFacet(fi));
        }
        let mut y = y.scale(&(S::one() / yy.sqrt_hosted()?));
        let other = (0..a.len()).find(|v| !f.contains(v));
        if let Some(v) = other {
            if a.balls()[v].vector().dot(&y).sign(FLOAT_TOL) > 0 {
                y = y.neg();
            }
        }
        out.push(Ball::new(y)?);
    }
    Ok(BallArrangement::with_lattice(out, lattice.dual(), a.solid().map(Solid::polar)))
}

/// Möbius map sending the tangent balls `i`, `j` to `{x_d ≥ 1}` and
/// `{x_d ≤ −1}`; the first other ball with nonzero curvature gets its
/// center on the `x_d`-axis.
///
/// The tangency point `b_i + b_j` is reflected to `2x_N`, a Householder
/// map turns the normal of `b_i` to `e_d`, and a translation fixes the rest.
pub fn standard_form<S: Scalar>(
    a: &BallArrangement<S>,
    i: usize,
    j: usize,
) -> Result<(BallArrangement<S>, MobiusMap<S>), PackingError> {
    let n = a.len();
    if i >= n || j >= n {
        return Err(PackingError::IndexOutOfRange(i.max(j)));
    }
    let (bi, bj) = (&a.balls()[i], &a.balls()[j]);
    if i == j || classify_pair(bi, bj)? != Position::ExternallyTangent {
        return Err(PackingError::NotTangent(i, j));
    }
    let d = a.dim();
    let north = LVector::<S>::north(d);
    // t is light-like: the tangency point
    let t = bi.vector().add(bj.vector());
    let two = S::from_i64(2);
    let send_to_infinity = if t.curvature().sign(FLOAT_TOL) > 0 {
        reflection(&t.sub(&north.scale(&two)))?
    } else {
        // already tangent at ∞; rescale so the offsets become 1
        let mu = t.time().clone();
        crate::lorentz::dilation(d, &(two / mu))?
    };
    let mut map = send_to_infinity;
    let img = map.apply(bi)?;
    let normal: Vec<S> = img.coords()[..d].to_vec();
    let mut target = vec![S::zero(); d];
    target[d - 1] = S::one();
    if !normal.iter().zip(&target).all(|(x, y)| x.approx_eq(y, FLOAT_TOL)) {
        // Householder reflection in u = normal − e_d
        let u: Vec<S> = normal.iter().zip(&target).map(|(x, y)| x.clone() - y.clone()).collect();
        let uu = dot(&u, &u);
        let h = Mat::from_fn(d, d, |r, c| {
            let e = if r == c { S::one() } else { S::zero() };
            e - S::from_i64(2) * u[r].clone() * u[c].clone() / uu.clone()
        });
        map = euclidean_linear(&h).compose(&map);
    }
    // only the sum of the two offsets is fixed so far
    let offset = map.apply(bi)?.coords()[d].clone();
    let third = (0..n).filter(|&k| k != i && k != j).find_map(|k| {
        let b = map.apply(&a.balls()[k]).ok()?;
        match geometry_from_ball(&b) {
            BallGeometry::Disk { center, .. } => Some(center),
            BallGeometry::HalfSpace { .. } => None,
        }
    });
    let mut shift: Vec<S> = match third {
        Some(c) => c.into_iter().map(|x| -x).collect(),
        None => vec![S::zero(); d],
    };
    shift[d - 1] = S::one() - offset;
    if shift.iter().any(|x| !x.is_zero()) {
        map = translation(&shift).compose(&map);
    }
    Ok((a.apply(&map)?, map))
}

pub fn gram<S: Scalar>(a: &BallArrangement<S>) -> Mat<S> {
    let b = a.balls();
    Mat::from_fn(b.len(), b.len(), |i, j| b[i].product(&b[j]))
}

/// Möbius equivalence of two maximal-rank packings under the given orderings.
pub fn mobius_equivalent<S: Scalar>(a: &BallArrangement<S>, b: &BallArrangement<S>) -> Result<bool, PackingError> {
    for x in [a, b] {
        if !is_packing(x) {
            return Err(PackingError::NotPacking);
        }
        let rank = gram(x).rank(FLOAT_TOL);
        if rank != x.dim() + 2 {
            return Err(PackingError::NotMaximalRank(rank, x.dim() + 2));
        }
    }
    if a.len() != b.len() || a.dim() != b.dim() {
        return Ok(false);
    }
    let (ga, gb) = (gram(a), gram(b));
    let scale = ga.to_f64().to_rows().iter().flatten().fold(1.0f64, |m, x| m.max(x.abs()));
    Ok(ga.approx_eq(&gb, FLOAT_TOL * scale))
}

/// Eigenvalues of the Gramian with multiplicities, ascending.
pub fn mobius_spectra(s: Solid) -> Result<Vec<(f64, usize)>, PackingError> {
    let a = project(&regular_edge_scribed::<f64>(s)?)?;
    Ok(spectrum(&gram(&a)))
}

/// Groups the eigenvalues of a symmetric matrix that agree within `1e-6`.
pub fn spectrum(g: &Mat<f64>) -> Vec<(f64, usize)> {
    let n = g.rows();
    let m = DMatrix::from_fn(n, n, |i, j| g[(i, j)]);
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, Vec<f64>)> = Vec::new();
    for x in ev {
        match out.last_mut() {
            Some((_, group)) if (x - group[0]).abs() <= 1e-6 * x.abs().max(1.0) => group.push(x),
            _ => out.push((x, vec![x])),
        }
    }
    out.into_iter()
        .map(|(_, g)| {
            let mean = g.iter().sum::<f64>() / g.len() as f64;
            let snapped = if mean.abs() < 1e-9 { 0.0 } else { mean };
            (snapped, g.len())
        })
        .collect()
}

/// A square pyramid whose lateral edge to vertex 0 passes outside the unit
/// sphere: its projection has exactly one overlapping pair, `(0, 4)`.
pub fn pyramid_fixture() -> Polytope<f64> {
    let vertices = vec![
        vec![1.0, 1.0, 0.0],
        vec![1.0, -1.0, 0.0],
        vec![-1.0, 1.0, 0.0],
        vec![-1.0, -1.0, 0.0],
        vec![0.4, 0.4, 1.2],
    ];
    let edges = vec![vec![0, 1], vec![1, 3], vec![2, 3], vec![0, 2], vec![0, 4], vec![1, 4], vec![2, 4], vec![3, 4]];
    let faces = vec![vec![0, 1, 2, 3], vec![0, 1, 4], vec![1, 3, 4], vec![2, 3, 4], vec![0, 2, 4]];
    Polytope::new(None, vertices, vec![edges, faces])
}
