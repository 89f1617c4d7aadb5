//! Lorentzian curvatures of faces and the Descartes-type relations between
//! them: the flag theorem, the Platonic relations and recurrences, and the
//! integrality certificates built on them.

use std::collections::HashMap;

use thiserror::Error;

use crate::apollonian::{ApollonianError, Cluster, Generator, Role, Seed};
use crate::lorentz::{classify_pair, Ball, LVector, Position};
use crate::numeric::{Mat, NumericError, Ring, Scalar, FLOAT_TOL};
use crate::packing::{candidate_pairs, BallArrangement, PackingError};
use crate::polytope::{half_edge_length_squared, phi, two_cos_pi_over, FaceLattice, PolytopeError, Solid};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DescartesError {
    #[error("Gramian is singular")]
    SingularGram,
    #[error("corner entries {0} and {1} are equal")]
    EqualCornerEntries(usize, usize),
    #[error("last corner entry is zero")]
    ZeroCornerEnd,
    #[error("negative discriminant {0}")]
    NegativeDiscriminant(f64),
    #[error("{0} is not a Platonic solid")]
    NotPlatonic(Solid),
    #[error("expected {expected} values, got {found}")]
    Length { expected: usize, found: usize },
    #[error("rank {0} out of range")]
    Rank(usize),
    #[error("relations do not determine every vertex")]
    Incomplete,
    #[error("no root matches the seed's polytope curvature")]
    NoMatchingRoot,
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Packing(#[from] PackingError),
    #[error(transparent)]
    Apollonian(#[from] ApollonianError),
}

/// `|lhs − rhs| / max(1, |lhs|)`.
pub fn scaled_residual<S: Scalar>(lhs: &S, rhs: &S) -> f64 {
    (lhs.clone() - rhs.clone()).to_f64().abs() / lhs.to_f64().abs().max(1.0)
}

/// Mean of the Lorentzian vectors of the given balls.
pub fn lorentzian_barycenter<S: Scalar>(balls: &[Ball<S>], vertices: &[usize]) -> LVector<S> {
    let n = balls[vertices[0]].coords().len();
    let sum = vertices.iter().fold(LVector(vec![S::zero(); n]), |acc, &v| acc.add(balls[v].vector()));
    sum.scale(&(S::one() / S::from_i64(vertices.len() as i64)))
}

/// `κ(x) = −<x_N, x>`, the mean of the vertex curvatures.
pub fn lorentzian_curvature<S: Scalar>(balls: &[Ball<S>], vertices: &[usize]) -> S {
    lorentzian_barycenter(balls, vertices).curvature()
}

/// `L_P(i)`: `−1`, `0`, then the inverse squared half edge-length of the
/// `i`-dimensional faces.
pub fn l_value<S: Scalar>(s: Solid, i: usize) -> Result<S, DescartesError> {
    let sch = s.schlafli();
    match i {
        0 => Ok(-S::one()),
        1 => Ok(S::zero()),
        _ if i <= sch.len() + 1 => {
            let face = Solid::from_schlafli(&sch[..i - 1])?;
            Ok(S::one().checked_div(&half_edge_length_squared::<S>(face)?)?)
        }
        _ => Err(DescartesError::Rank(i)),
    }
}

/// `C(a)_{ij} = a_{max(i,j)}`.
pub fn corner_matrix<S: Scalar>(a: &[S]) -> Mat<S> {
    Mat::from_fn(a.len(), a.len(), |i, j| a[i.max(j)].clone())
}

/// The tridiagonal inverse of [`corner_matrix`].
pub fn corner_inverse<S: Scalar>(a: &[S]) -> Result<Mat<S>, DescartesError> {
    let n = a.len();
    if a[n - 1].is_zero() {
        return Err(DescartesError::ZeroCornerEnd);
    }
    let mut gaps = Vec::with_capacity(n);
    for i in 0..n - 1 {
        let g = a[i].clone() - a[i + 1].clone();
        if g.is_zero() {
            return Err(DescartesError::EqualCornerEntries(i, i + 1));
        }
        gaps.push(S::one() / g);
    }
    gaps.push(S::one() / a[n - 1].clone());
    Ok(Mat::from_fn(n, n, |i, j| {
        if i == j {
            let before = if i > 0 { gaps[i - 1].clone() } else { S::zero() };
            before + gaps[i].clone()
        } else if i + 1 == j {
            -gaps[i].clone()
        } else if j + 1 == i {
            -gaps[j].clone()
        } else {
            S::zero()
        }
    }))
}

/// `Σ (xᵢ − x_{i+1})² / (aᵢ − a_{i+1}) + x_n² / a_n`.
pub fn corner_quadratic_form<S: Scalar>(a: &[S], x: &[S]) -> S {
    let n = a.len();
    let mut out = x[n - 1].clone() * x[n - 1].clone() / a[n - 1].clone();
    for i in 0..n - 1 {
        let dx = x[i].clone() - x[i + 1].clone();
        out = out + dx.clone() * dx / (a[i].clone() - a[i + 1].clone());
    }
    out
}

/// `κ Gram(Δ)⁻¹ κᵀ` for a basis `Δ`; it vanishes.
pub fn gram_curvature_identity<S: Scalar>(basis: &[LVector<S>]) -> Result<S, DescartesError> {
    let n = basis.len();
    if n != basis[0].0.len() {
        return Err(DescartesError::Length { expected: basis[0].0.len(), found: n });
    }
    let g = Mat::from_fn(n, n, |i, j| basis[i].dot(&basis[j]));
    let inv = g.inverse(FLOAT_TOL).map_err(|_| DescartesError::SingularGram)?;
    let k: Vec<S> = basis.iter().map(LVector::curvature).collect();
    let gk = inv.mul_vec(&k);
    Ok(k.into_iter().zip(gk).fold(S::zero(), |acc, (a, b)| acc + a * b))
}

/// Both sides of `κ_P² = L(d+1) Σ (κ_{fᵢ} − κ_{f_{i+1}})² / (L(i+1) − L(i))`
/// for flag curvatures `κ_{f_0}, …, κ_{f_d}, κ_P`.
pub fn flag_relation_sides<S: Scalar>(s: Solid, flag: &[S]) -> Result<(S, S), DescartesError> {
    let n = s.dim() + 1;
    if flag.len() != n {
        return Err(DescartesError::Length { expected: n, found: flag.len() });
    }
    let l: Vec<S> = (0..n).map(|i| l_value(s, i)).collect::<Result<_, _>>()?;
    let mut sum = S::zero();
    for i in 0..n - 1 {
        let dk = flag[i].clone() - flag[i + 1].clone();
        sum = sum + dk.clone() * dk / (l[i + 1].clone() - l[i].clone());
    }
    Ok((flag[n - 1].clone() * flag[n - 1].clone(), l[n - 1].clone() * sum))
}

/// LHS − RHS of the flag relation.
pub fn verify_flag_relation<S: Scalar>(s: Solid, flag: &[S]) -> Result<S, DescartesError> {
    let (lhs, rhs) = flag_relation_sides(s, flag)?;
    Ok(lhs - rhs)
}

/// `κ_T² − (d/(d+2)) Σ C(i+2, 2)(κᵢ − κ_{i+1})²` for a simplex flag.
pub fn simplex_flag_residual<S: Scalar>(flag: &[S]) -> S {
    let d = flag.len() as i64 - 2;
    let mut sum = S::zero();
    for i in 0..flag.len() - 1 {
        let dk = flag[i].clone() - flag[i + 1].clone();
        let binom = (i as i64 + 2) * (i as i64 + 1) / 2;
        sum = sum + S::from_i64(binom) * dk.clone() * dk;
    }
    let last = flag[flag.len() - 1].clone();
    last.clone() * last - S::from_ratio(d, d + 2) * sum
}

/// `κ_C² − d Σ (κᵢ − κ_{i+1})²` for a hypercube flag.
pub fn cube_flag_residual<S: Scalar>(flag: &[S]) -> S {
    let d = flag.len() as i64 - 2;
    let mut sum = S::zero();
    for i in 0..flag.len() - 1 {
        let dk = flag[i].clone() - flag[i + 1].clone();
        sum = sum + dk.clone() * dk;
    }
    let last = flag[flag.len() - 1].clone();
    last.clone() * last - S::from_i64(d) * sum
}

/// `(Σκ)² − d Σκ²` for `d+2` curvatures.
pub fn soddy_gosset_residual<S: Scalar>(k: &[S]) -> S {
    let d = S::from_i64(k.len() as i64 - 2);
    let sum = k.iter().cloned().fold(S::zero(), |a, b| a + b);
    let sq = k.iter().cloned().fold(S::zero(), |a, b| a + b.clone() * b);
    sum.clone() * sum - d * sq
}

/// Curvatures `(κ_{f_0}, …, κ_{f_d}, κ_P)` of every flag of a labelled
/// arrangement.
pub fn flag_curvatures<S: Scalar>(a: &BallArrangement<S>) -> Result<Vec<Vec<S>>, DescartesError> {
    let lattice = a.lattice().ok_or(PackingError::MissingLattice)?;
    let balls = a.balls();
    let all: Vec<usize> = (0..balls.len()).collect();
    let k_p = lorentzian_curvature(balls, &all);
    let mut means: Vec<Vec<S>> = Vec::with_capacity(lattice.dim());
    for k in 0..lattice.dim() {
        means.push(lattice.faces(k)?.iter().map(|f| lorentzian_curvature(balls, f)).collect());
    }
    Ok(lattice
        .flags()
        .into_iter()
        .map(|flag| {
            let mut out: Vec<S> = flag.iter().enumerate().map(|(k, &i)| means[k][i].clone()).collect();
            out.push(k_p.clone());
            out
        })
        .collect())
}

/// Squared cosines and sines of `π/p` and `π/q`.
#[derive(Clone, Debug)]
struct Trig<S> {
    cp2: S,
    sp2: S,
    cq2: S,
    sq2: S,
}

impl<S: Scalar> Trig<S> {
    fn new(p: usize, q: usize) -> Result<Self, DescartesError> {
        let sq = |n| -> Result<S, DescartesError> {
            let c = two_cos_pi_over::<S>(n)?;
            Ok(c.clone() * c / S::from_i64(4))
        };
        let (cp2, cq2) = (sq(p)?, sq(q)?);
        Ok(Trig { sp2: S::one() - cp2.clone(), sq2: S::one() - cq2.clone(), cp2, cq2 })
    }

    /// Coefficients of `(κ_v−κ_e)², (κ_e−κ_f)², (κ_f−κ_P)²`.
    fn flag_coefficients(&self) -> [S; 3] {
        let den = self.sq2.clone() - self.cp2.clone();
        [self.cp2.clone() / den.clone(), self.sp2.clone() / den, self.sp2.clone() / self.cq2.clone()]
    }
}

fn check_platonic(p: usize, q: usize) -> Result<(), DescartesError> {
    match Solid::from_schlafli(&[p, q])? {
        s if s.platonic_pq().is_some() => Ok(()),
        s => Err(DescartesError::NotPlatonic(s)),
    }
}

/// The coefficients of the Platonic flag equation for `{p,q}`.
pub fn platonic_coefficients<S: Scalar>(p: usize, q: usize) -> Result<[S; 3], DescartesError> {
    check_platonic(p, q)?;
    Ok(Trig::new(p, q)?.flag_coefficients())
}

/// LHS − RHS of the Platonic flag equation.
pub fn platonic_flag_relation<S: Scalar>(p: usize, q: usize, k: [&S; 4]) -> Result<S, DescartesError> {
    let c = platonic_coefficients::<S>(p, q)?;
    let sq = |a: &S, b: &S| (a.clone() - b.clone()) * (a.clone() - b.clone());
    let rhs = c[0].clone() * sq(k[0], k[1]) + c[1].clone() * sq(k[1], k[2]) + c[2].clone() * sq(k[2], k[3]);
    Ok(k[3].clone() * k[3].clone() - rhs)
}

/// Which neighbouring element a consecutive relation solves for.
#[derive(Clone, Debug, PartialEq)]
pub enum Consecutive<S> {
    /// `v'` from `κ_v, κ_e`.
    Vertex { v: S, e: S },
    /// `e'` from `κ_e, κ_v, κ_f`.
    Edge { e: S, v: S, f: S },
    /// `f'` from `κ_f, κ_e, κ_P`.
    Face { f: S, e: S, p: S },
    /// `P' = s_f(P)` from `κ_P, κ_f`.
    Polyhedron { p: S, f: S },
}

/// The curvature of the partner element in a consecutive relation.
pub fn consecutive<S: Scalar>(p: usize, q: usize, rel: &Consecutive<S>) -> Result<S, DescartesError> {
    check_platonic(p, q)?;
    let t = Trig::<S>::new(p, q)?;
    let two = S::from_i64(2);
    Ok(match rel {
        Consecutive::Vertex { v, e } => two * e.clone() - v.clone(),
        Consecutive::Edge { e, v, f } => two * (t.cp2 * v.clone() + t.sp2 * f.clone()) - e.clone(),
        Consecutive::Face { f, e, p } => {
            let a = t.cq2 / t.sp2.clone();
            let b = (t.sq2 - t.cp2) / t.sp2;
            two * (a * e.clone() + b * p.clone()) - f.clone()
        }
        Consecutive::Polyhedron { p, f } => {
            let c = t.sp2.clone() / (t.sp2 - t.cq2);
            two * c * f.clone() - p.clone()
        }
    })
}

/// `κ_f` of a `p`-gon from three consecutive vertex curvatures
/// `(κ_{i−1}, κ_i, κ_{i+1})`.
pub fn face_from_three<S: Scalar>(p: usize, k: [&S; 3]) -> Result<S, DescartesError> {
    let c = two_cos_pi_over::<S>(p)?;
    let s2 = S::one() - c.clone() * c / S::from_i64(4);
    let four = S::from_i64(4) * s2.clone();
    Ok((k[0].clone() + k[2].clone()) / four + (S::one() - S::one() / (S::from_i64(2) * s2)) * k[1].clone())
}

/// Inverse of [`face_from_three`]: the vertex after `(κ_x, κ_y)` on a face
/// of curvature `κ_f`.
fn next_on_face<S: Scalar>(p: usize, kf: &S, kx: &S, ky: &S) -> Result<S, DescartesError> {
    let c = two_cos_pi_over::<S>(p)?;
    let s2 = S::one() - c.clone() * c / S::from_i64(4);
    let w = S::one() - S::one() / (S::from_i64(2) * s2.clone());
    Ok(S::from_i64(4) * s2 * (kf.clone() - w * ky.clone()) - kx.clone())
}

/// The radicand `(1 − 4cos²(π/p))κᵢ² + κᵢκ_{i+1} + κᵢκ_{i−1} + κ_{i+1}κ_{i−1}`.
pub fn next_polyhedron_radicand<S: Scalar>(p: usize, k: [&S; 3]) -> Result<S, DescartesError> {
    let c = two_cos_pi_over::<S>(p)?;
    let (km, ki, kp) = (k[0].clone(), k[1].clone(), k[2].clone());
    Ok((S::one() - c.clone() * c) * ki.clone() * ki.clone() + ki.clone() * kp.clone() + ki * km.clone() + kp * km)
}

/// Both Lorentzian curvatures of the polyhedra on a face with consecutive
/// vertex curvatures `(κ_{i−1}, κ_i, κ_{i+1})`: `P` and `s_f(P)`, `+` root
/// first.
pub fn solve_next_polyhedron<S: Scalar>(p: usize, q: usize, k: [&S; 3]) -> Result<(S, S), DescartesError> {
    check_platonic(p, q)?;
    let t = Trig::<S>::new(p, q)?;
    let rad = next_polyhedron_radicand(p, k)?;
    if rad.sign(FLOAT_TOL) < 0 {
        return Err(DescartesError::NegativeDiscriminant(rad.to_f64()));
    }
    // cos(π/q)·√R taken as one root so it stays in the field
    let root = (t.cq2.clone() * rad).sqrt_hosted()?;
    let cos2p = S::from_i64(2) * t.cp2.clone() - S::one();
    let num = (k[0].clone() + k[2].clone()) / S::from_i64(2) - cos2p * k[1].clone();
    let den = S::from_i64(2) * (t.sq2 - t.cp2);
    Ok(((num.clone() + root.clone()) / den.clone(), (num - root) / den))
}

/// The per-solid closed forms.
#[derive(Clone, Debug, PartialEq)]
pub enum Recurrence<S> {
    /// `κ₁+κ₂+κ₃ ± √(2(κ₁κ₂+κ₂κ₃+κ₁κ₃))`.
    OctahedronNext([S; 3]),
    /// `κ_{i+3} = κᵢ + κ_{i+2} − κ_{i+1}` on a square.
    SquareFace([S; 3]),
    /// `κ_v̄ = 2κ_P − κ_v`, for the cube, octahedron, icosahedron and dodecahedron.
    Antipodal { polytope: S, vertex: S },
    /// `κ_{i+1} + κ_{i−1} ± √(−κᵢ² + κᵢκ_{i+1} + κᵢκ_{i−1} + κ_{i−1}κ_{i+1})`.
    CubeNext([S; 3]),
    /// `φ²(κ₁+κ₂+κ₃) ± φ³√(κ₁κ₂+κ₁κ₃+κ₂κ₃)`.
    IcosahedronNext([S; 3]),
    /// `κ_{i+2} = κ_{i−1} + φ(κ_{i+1} − κᵢ)` on a pentagon, from `(κ_{i−1}, κᵢ, κ_{i+1})`.
    PentagonFace([S; 3]),
    /// `κ_D = (φ²/2)(κ_{u₁}+κ_{u₂}+κ_{u₃}) − ((1+3φ)/2)κ_v`.
    DodecahedronFromVertex { vertex: S, neighbours: [S; 3] },
    /// `−φκᵢ + φ²(κ_{i+1} + κ_{i−1} ± √(−φκᵢ² + κᵢκ_{i+1} + κᵢκ_{i−1} + κ_{i−1}κ_{i+1}))`.
    DodecahedronNext([S; 3]),
}

fn checked_root<S: Scalar>(rad: S) -> Result<S, DescartesError> {
    if rad.sign(FLOAT_TOL) < 0 {
        return Err(DescartesError::NegativeDiscriminant(rad.to_f64()));
    }
    Ok(rad.sqrt_hosted()?)
}

fn pm<S: Scalar>(a: S, b: S) -> Vec<S> {
    vec![a.clone() + b.clone(), a - b]
}

/// Values of a per-solid formula; two-valued ones list the `+` root first.
pub fn solid_recurrence<S: Scalar>(r: &Recurrence<S>) -> Result<Vec<S>, DescartesError> {
    let i = S::from_i64;
    let e2 = |k: &[S; 3]| k[0].clone() * k[1].clone() + k[1].clone() * k[2].clone() + k[0].clone() * k[2].clone();
    let sum = |k: &[S; 3]| k[0].clone() + k[1].clone() + k[2].clone();
    Ok(match r {
        Recurrence::OctahedronNext(k) => pm(sum(k), checked_root(i(2) * e2(k))?),
        Recurrence::SquareFace(k) => vec![k[0].clone() + k[2].clone() - k[1].clone()],
        Recurrence::Antipodal { polytope, vertex } => vec![i(2) * polytope.clone() - vertex.clone()],
        Recurrence::CubeNext([km, ki, kp]) => {
            let rad = -ki.clone() * ki.clone() + ki.clone() * kp.clone() + ki.clone() * km.clone() + km.clone() * kp.clone();
            pm(km.clone() + kp.clone(), checked_root(rad)?)
        }
        Recurrence::IcosahedronNext(k) => {
            let f: S = phi()?;
            let f2 = f.clone() * f.clone();
            pm(f2.clone() * sum(k), f2 * f * checked_root(e2(k))?)
        }
        Recurrence::PentagonFace([km, ki, kp]) => {
            let f: S = phi()?;
            vec![km.clone() + f * (kp.clone() - ki.clone())]
        }
        Recurrence::DodecahedronFromVertex { vertex, neighbours } => {
            let f: S = phi()?;
            let half = S::from_ratio(1, 2);
            vec![half.clone() * f.clone() * f.clone() * sum(neighbours) - half * (S::one() + i(3) * f) * vertex.clone()]
        }
        Recurrence::DodecahedronNext([km, ki, kp]) => {
            let f: S = phi()?;
            let rad = -f.clone() * ki.clone() * ki.clone()
                + ki.clone() * kp.clone()
                + ki.clone() * km.clone()
                + km.clone() * kp.clone();
            let f2 = f.clone() * f.clone();
            let base = -f * ki.clone() + f2.clone() * (km.clone() + kp.clone());
            pm(base, f2 * checked_root(rad)?)
        }
    })
}

/// Outcome of an integrality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    Integral,
    PhiIntegral,
    NotCertified,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegralityReport<S> {
    pub certificate: Certificate,
    /// The curvatures in the order used, middle one second.
    pub triple: [S; 3],
    pub radicand: S,
    pub radical: Option<S>,
}

/// The radicand of the integrality proposition for `solid`.
///
/// The dodecahedron uses `−φκᵢ² + …`, the form that appears in the
/// formula for `κ_{D±}`.
pub fn integrality_radicand<S: Scalar>(s: Solid, k: [&S; 3]) -> Result<S, DescartesError> {
    let (km, ki, kp) = (k[0].clone(), k[1].clone(), k[2].clone());
    let e2 = km.clone() * ki.clone() + km.clone() * kp.clone() + ki.clone() * kp.clone();
    Ok(match s.platonic_pq() {
        Some((3, 3)) | Some((3, 5)) => e2,
        Some((3, 4)) => S::from_i64(2) * e2,
        Some((4, 3)) => e2 - ki.clone() * ki,
        Some((5, 3)) => e2 - phi::<S>()? * ki.clone() * ki,
        _ => return Err(DescartesError::NotPlatonic(s)),
    })
}

/// Sufficient condition for the cluster of the packing with consecutive
/// curvatures `k` to be integral (tetrahedron, octahedron, cube) or
/// φ-integral (icosahedron, dodecahedron).
///
/// For square and pentagonal faces the middle disk is not known from an
/// unordered triple; each choice is tried in turn and the first with a
/// square radicand is used.
pub fn integrality_condition<S: Scalar>(s: Solid, k: &[S; 3]) -> Result<IntegralityReport<S>, DescartesError> {
    let (ring, cert) = match s.platonic_pq() {
        Some((3, 3)) | Some((3, 4)) | Some((4, 3)) => (Ring::Z, Certificate::Integral),
        Some((3, 5)) | Some((5, 3)) => (Ring::ZPhi, Certificate::PhiIntegral),
        _ => return Err(DescartesError::NotPlatonic(s)),
    };
    let mut first = None;
    for rot in 0..3 {
        let t = [k[rot].clone(), k[(rot + 1) % 3].clone(), k[(rot + 2) % 3].clone()];
        let rad = integrality_radicand(s, [&t[0], &t[1], &t[2]])?;
        let root = if rad.sign(FLOAT_TOL) >= 0 { rad.sqrt().ok().flatten() } else { None };
        if let Some(r) = root {
            let ok = t.iter().chain([&r]).map(|x| x.in_ring(ring)).collect::<Result<Vec<_>, _>>()?;
            let certificate = if ok.iter().all(|&b| b) { cert } else { Certificate::NotCertified };
            return Ok(IntegralityReport { certificate, triple: t, radicand: rad, radical: Some(r) });
        }
        first.get_or_insert((t, rad));
    }
    let (triple, radicand) = first.expect("three rotations tried");
    Ok(IntegralityReport { certificate: Certificate::NotCertified, triple, radicand, radical: None })
}

/// Index sets of `size` pairwise externally tangent balls.
pub fn tangent_cliques<S: Scalar>(balls: &[Ball<S>], size: usize) -> Vec<Vec<usize>> {
    let n = balls.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, j) in candidate_pairs(balls) {
        if classify_pair(&balls[i], &balls[j]) == Ok(Position::ExternallyTangent) {
            adj[i].push(j);
        }
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn grow(adj: &[Vec<usize>], cand: &[usize], size: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if stack.len() == size {
            out.push(stack.clone());
            return;
        }
        for (k, &v) in cand.iter().enumerate() {
            let next: Vec<usize> = cand[k + 1..].iter().copied().filter(|w| adj[v].binary_search(w).is_ok()).collect();
            stack.push(v);
            grow(adj, &next, size, stack, out);
            stack.pop();
        }
    }
    let all: Vec<usize> = (0..n).collect();
    grow(&adj, &all, size, &mut stack, &mut out);
    out
}

/// Completes the vertex curvatures of a polyhedron from a partial set,
/// using only the face equation and the consecutive-faces relation.
pub fn complete_polyhedron<S: Scalar>(
    lattice: &FaceLattice,
    p: usize,
    q: usize,
    known: &mut [Option<S>],
    k_p: &S,
) -> Result<(), DescartesError> {
    let cycles: Vec<Vec<usize>> =
        (0..lattice.faces(2)?.len()).map(|i| lattice.face_cycle(i)).collect::<Result<_, _>>()?;
    let two = S::from_i64(2);
    loop {
        let mut progress = false;
        // within a face: three consecutive vertices fix the rest
        for c in &cycles {
            let n = c.len();
            if c.iter().all(|&v| known[v].is_some()) {
                continue;
            }
            let Some(i) = (0..n).find(|&i| {
                [c[(i + n - 1) % n], c[i], c[(i + 1) % n]].iter().all(|&v| known[v].is_some())
            }) else {
                continue;
            };
            let k = |v: usize, kn: &[Option<S>]| kn[v].clone().expect("known");
            let kf = face_from_three(p, [&k(c[(i + n - 1) % n], known), &k(c[i], known), &k(c[(i + 1) % n], known)])?;
            for step in 1..n - 1 {
                let (x, y, z) = (c[(i + step - 1) % n], c[(i + step) % n], c[(i + step + 1) % n]);
                if known[z].is_none() {
                    known[z] = Some(next_on_face(p, &kf, &k(x, known), &k(y, known))?);
                }
            }
            progress = true;
        }
        // across an edge: the consecutive-faces relation gives the next face
        for (fi, c) in cycles.iter().enumerate() {
            if !c.iter().all(|&v| known[v].is_some()) {
                continue;
            }
            let n = c.len();
            let kf = c.iter().map(|&v| known[v].clone().unwrap()).fold(S::zero(), |a, b| a + b) / S::from_i64(n as i64);
            for i in 0..n {
                let (a, b) = (c[i], c[(i + 1) % n]);
                let Some((_, g)) = cycles.iter().enumerate().find(|(gi, g)| *gi != fi && g.contains(&a) && g.contains(&b)) else {
                    continue;
                };
                let m = g.len();
                let ia = g.iter().position(|&v| v == a).unwrap();
                // the neighbour of a in g other than b
                let cv = if g[(ia + 1) % m] == b { g[(ia + m - 1) % m] } else { g[(ia + 1) % m] };
                if known[cv].is_some() {
                    continue;
                }
                let (ka, kb) = (known[a].clone().unwrap(), known[b].clone().unwrap());
                let ke = (ka.clone() + kb.clone()) / two.clone();
                let kg = consecutive(p, q, &Consecutive::Face { f: kf.clone(), e: ke, p: k_p.clone() })?;
                known[cv] = Some(next_on_face(p, &kg, &kb, &ka)?);
                progress = true;
            }
        }
        if known.iter().all(Option::is_some) {
            return Ok(());
        }
        if !progress {
            return Err(DescartesError::Incomplete);
        }
    }
}

/// Result of comparing matrix-orbit curvatures with recurrence values.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheck {
    /// Polyhedra visited by the recurrence walk.
    pub polyhedra: usize,
    /// Cluster entries compared.
    pub compared: usize,
    pub mismatches: usize,
    pub max_deviation: f64,
}

struct Node<S> {
    balls: Vec<Ball<S>>,
    duals: Vec<Ball<S>>,
    kappa: Vec<S>,
    k_p: S,
    from_face: Option<usize>,
}

/// Rebuilds the curvatures of a cluster through the recurrences alone.
///
/// The seed polyhedron gets its curvature from [`solve_next_polyhedron`]
/// on the seed triple (the root equal to its mean) and its vertices from
/// [`complete_polyhedron`]. Each inversion in a face gives the neighbour
/// through the consecutive-polyhedra relation, followed by another
/// completion. Balls are tracked by matrices only to pair them with the
/// cluster's entries; no matrix curvature enters the recurrence values.
pub fn recurrence_cross_check<S: Scalar>(seed: &Seed<S>, cluster: &Cluster<S>) -> Result<CrossCheck, DescartesError> {
    let primal = &seed.packing.primal;
    let solid = primal.solid().ok_or(PackingError::MissingLattice)?;
    let (p, q) = solid.platonic_pq().ok_or(DescartesError::NotPlatonic(solid))?;
    let lattice = primal.lattice().ok_or(PackingError::MissingLattice)?;
    let kappa0 = primal.curvatures();
    let [a, m, b] = seed.triple;
    let (r1, r2) = solve_next_polyhedron(p, q, [&kappa0[a], &kappa0[m], &kappa0[b]])?;
    let all: Vec<usize> = (0..primal.len()).collect();
    let mean = lorentzian_curvature(primal.balls(), &all);
    let tol = FLOAT_TOL * mean.to_f64().abs().max(1.0);
    let k_p = if r1.approx_eq(&mean, tol) {
        r1
    } else if r2.approx_eq(&mean, tol) {
        r2
    } else {
        return Err(DescartesError::NoMatchingRoot);
    };
    let mut known = vec![None; primal.len()];
    for v in seed.triple {
        known[v] = Some(kappa0[v].clone());
    }
    complete_polyhedron(lattice, p, q, &mut known, &k_p)?;

    let mut values: HashMap<Vec<S::Key>, S> = HashMap::new();
    let mut out = CrossCheck { polyhedra: 0, compared: 0, mismatches: 0, max_deviation: 0.0 };
    let mut level = vec![Node {
        balls: primal.balls().to_vec(),
        duals: seed.packing.dual.balls().to_vec(),
        kappa: known.into_iter().map(Option::unwrap).collect(),
        k_p,
        from_face: None,
    }];
    let faces = lattice.faces(2)?.to_vec();
    for depth in 0..=cluster.depth() {
        let mut next = Vec::new();
        for node in &level {
            out.polyhedra += 1;
            for (ball, k) in node.balls.iter().zip(&node.kappa) {
                let prev = values.entry(ball.key()).or_insert_with(|| k.clone());
                note(&mut out, prev, k);
            }
            if depth == cluster.depth() {
                continue;
            }
            for (j, face) in faces.iter().enumerate() {
                if node.from_face == Some(j) {
                    continue;
                }
                let s = Generator::new("s", Role::DualInversion, node.duals[j].vector().clone())?;
                let kf = face.iter().map(|&v| node.kappa[v].clone()).fold(S::zero(), |x, y| x + y)
                    / S::from_i64(face.len() as i64);
                let k_p = consecutive(p, q, &Consecutive::Polyhedron { p: node.k_p.clone(), f: kf })?;
                let mut known = vec![None; node.balls.len()];
                for &v in face {
                    known[v] = Some(node.kappa[v].clone());
                }
                complete_polyhedron(lattice, p, q, &mut known, &k_p)?;
                next.push(Node {
                    balls: node.balls.iter().map(|x| s.apply(x)).collect::<Result<_, _>>().map_err(ApollonianError::from)?,
                    duals: node.duals.iter().map(|x| s.apply(x)).collect::<Result<_, _>>().map_err(ApollonianError::from)?,
                    kappa: known.into_iter().map(Option::unwrap).collect(),
                    k_p,
                    from_face: Some(j),
                });
            }
        }
        level = next;
    }
    out.compared = 0;
    out.mismatches = 0;
    out.max_deviation = 0.0;
    for e in cluster.entries() {
        match values.get(&e.ball.key()) {
            Some(k) => {
                out.compared += 1;
                note(&mut out, &e.ball.curvature(), k);
            }
            None => out.mismatches += 1,
        }
    }
    Ok(out)
}

fn note<S: Scalar>(out: &mut CrossCheck, a: &S, b: &S) {
    let dev = if S::EXACT && a == b { 0.0 } else { scaled_residual(a, b) };
    let bad = if S::EXACT { a != b } else { dev > FLOAT_TOL };
    if bad {
        out.mismatches += 1;
    }
    out.max_deviation = out.max_deviation.max(dev);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apollonian::{cluster_from_curvatures, generate_cluster, seed_from_curvatures, standard_cluster};
    use crate::lorentz::{ball_from_center, reflection};
    use crate::numeric::{Q2, Q5};
    use crate::packing::project;
    use crate::polytope::{regular_edge_scribed, CUBE, DODECAHEDRON, ICOSAHEDRON, OCTAHEDRON, PLATONIC, TETRAHEDRON};
    use proptest::prelude::*;

    fn q(n: i64) -> Q2 {
        Q2::from_int(n)
    }

    #[test]
    fn barycenter_curvatures() {
        let balls: Vec<Ball<Q2>> = [(0, 0), (0, 0), (1, 1), (1, 1)]
            .iter()
            .enumerate()
            .map(|(i, _)| {
                // quadruple (0,0,1,1): lines y = ±1 and unit disks at x = ±1
                let one = q(1);
                match i {
                    0 => Ball::from_i64(&[0, 1, 1, 1]).unwrap(),
                    1 => Ball::from_i64(&[0, -1, 1, 1]).unwrap(),
                    2 => ball_from_center(&[one.clone(), q(0)], &one).unwrap(),
                    _ => ball_from_center(&[-one.clone(), q(0)], &one).unwrap(),
                }
            })
            .collect();
        assert_eq!(lorentzian_curvature(&balls, &[0, 1]), q(0));
        assert_eq!(lorentzian_curvature(&balls, &[0, 1, 2]), Q2::from_ratio(1, 3));
        assert_eq!(lorentzian_curvature(&balls, &[0, 1, 2, 3]), Q2::from_ratio(1, 2));
        let basis: Vec<LVector<Q2>> = balls.iter().map(|b| b.vector().clone()).collect();
        assert_eq!(gram_curvature_identity(&basis).unwrap(), q(0));
        assert_eq!(soddy_gosset_residual(&balls.iter().map(Ball::curvature).collect::<Vec<_>>()), q(0));
        // a Lorentz image keeps the identity
        let r = reflection(&LVector::from_i64(&[1, 2, 0, 1])).unwrap();
        let moved: Vec<LVector<Q2>> = basis.iter().map(|v| r.apply_vector(v)).collect();
        assert_eq!(gram_curvature_identity(&moved).unwrap(), q(0));
    }

    #[test]
    fn gram_identity_under_random_lorentz_maps() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for s in [TETRAHEDRON, OCTAHEDRON, CUBE] {
            let a = project(&regular_edge_scribed::<Q2>(s).unwrap()).unwrap();
            let vs: Vec<LVector<Q2>> = a.balls().iter().map(|b| b.vector().clone()).collect();
            let n = vs.len();
            let basis = (1..n)
                .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
                .find_map(|(i, j, k)| {
                    let b = vec![vs[0].clone(), vs[i].clone(), vs[j].clone(), vs[k].clone()];
                    gram_curvature_identity(&b).is_ok().then_some(b)
                })
                .unwrap();
            assert_eq!(gram_curvature_identity(&basis).unwrap(), q(0), "{s}");
            for _ in 0..20 {
                let mut moved = basis.clone();
                for _ in 0..3 {
                    let w = loop {
                        let w = LVector::from_i64(&[0; 4].map(|_| rng.gen_range(-4..=4)));
                        if w.dot(&w) > q(0) {
                            break w;
                        }
                    };
                    let r = reflection(&w).unwrap();
                    moved = moved.iter().map(|v| r.apply_vector(v)).collect();
                }
                assert_eq!(gram_curvature_identity(&moved).unwrap(), q(0), "{s}");
            }
        }
    }

    #[test]
    fn l_values() {
        assert_eq!(l_value::<Q2>(TETRAHEDRON, 0).unwrap(), q(-1));
        assert_eq!(l_value::<Q2>(TETRAHEDRON, 1).unwrap(), q(0));
        assert_eq!(l_value::<Q2>(TETRAHEDRON, 2).unwrap(), Q2::from_ratio(1, 3));
        assert_eq!(l_value::<Q2>(TETRAHEDRON, 3).unwrap(), Q2::from_ratio(1, 2));
        assert_eq!(l_value::<Q2>(CUBE, 2).unwrap(), q(1));
        assert_eq!(l_value::<Q2>(CUBE, 3).unwrap(), q(2));
        assert!(l_value::<Q2>(CUBE, 4).is_err());
    }

    #[test]
    fn corner_algebra() {
        let a = [q(3), q(2), q(1)];
        let c = corner_matrix(&a);
        assert_eq!(c.mul(&corner_inverse(&a).unwrap()), Mat::identity(3));
        assert_eq!(corner_inverse(&[q(1), q(0)]), Err(DescartesError::ZeroCornerEnd));
        assert_eq!(corner_inverse(&[q(2), q(2), q(1)]), Err(DescartesError::EqualCornerEntries(0, 1)));
    }

    proptest! {
        #[test]
        fn corner_quadratic_form_matches(x in prop::collection::vec(-20i64..20, 4)) {
            let a = [q(1), q(0), Q2::from_ratio(-1, 3), Q2::from_ratio(-1, 2)];
            let x: Vec<Q2> = x.into_iter().map(q).collect();
            let lhs = dot_form(&corner_inverse(&a).unwrap(), &x);
            prop_assert_eq!(lhs, corner_quadratic_form(&a, &x));
        }
    }

    fn dot_form(m: &Mat<Q2>, x: &[Q2]) -> Q2 {
        m.mul_vec(x).into_iter().zip(x).fold(q(0), |acc, (a, b)| acc + a * b.clone())
    }

    #[test]
    fn tetrahedron_quadruple_flag() {
        let flag = [q(0), q(0), Q2::from_ratio(1, 3), Q2::from_ratio(1, 2)];
        assert_eq!(verify_flag_relation(TETRAHEDRON, &flag).unwrap(), q(0));
        assert_eq!(simplex_flag_residual(&flag), q(0));
        let c = platonic_coefficients::<Q2>(3, 3).unwrap();
        assert_eq!(c, [Q2::from_ratio(1, 2), Q2::from_ratio(3, 2), q(3)]);
    }

    #[test]
    fn flags_of_exact_solids() {
        for s in [TETRAHEDRON, OCTAHEDRON, CUBE] {
            let a = project(&regular_edge_scribed::<Q2>(s).unwrap()).unwrap();
            let flags = flag_curvatures(&a).unwrap();
            assert!(!flags.is_empty());
            for f in &flags {
                assert_eq!(verify_flag_relation(s, f).unwrap(), q(0), "{s}");
                let (p, qq) = s.platonic_pq().unwrap();
                assert_eq!(platonic_flag_relation(p, qq, [&f[0], &f[1], &f[2], &f[3]]).unwrap(), q(0));
                if s == CUBE {
                    assert_eq!(cube_flag_residual(f), q(0));
                }
            }
        }
        for s in [ICOSAHEDRON, DODECAHEDRON] {
            let a = project(&regular_edge_scribed::<Q5>(s).unwrap()).unwrap();
            for f in flag_curvatures(&a).unwrap() {
                assert_eq!(verify_flag_relation(s, &f).unwrap(), Q5::from_int(0));
            }
        }
    }

    #[test]
    fn platonic_specializations() {
        let o = platonic_coefficients::<Q2>(3, 4).unwrap();
        assert_eq!(o, [q(1), q(3), Q2::from_ratio(3, 2)]);
        let f: Q5 = phi().unwrap();
        let d = platonic_coefficients::<Q5>(5, 3).unwrap();
        let f2 = f.clone() * f.clone();
        assert_eq!(d[0], f2.clone() * f2.clone());
        assert_eq!(d[1], Q5::from_int(2) + f.clone());
        assert_eq!(d[2], Q5::from_int(1) / f2 + Q5::from_int(1));
        // the general theorem's L-values give the same coefficients
        for s in PLATONIC {
            let (p, qq) = s.platonic_pq().unwrap();
            let c = platonic_coefficients::<f64>(p, qq).unwrap();
            let l: Vec<f64> = (0..4).map(|i| l_value::<f64>(s, i).unwrap()).collect();
            let g = [l[3] / (l[2] - l[1]), l[3] / (l[3] - l[2])];
            assert!((c[1] - g[0]).abs() < 1e-12 && (c[2] - g[1]).abs() < 1e-12, "{s}");
            assert!((c[0] - l[3]).abs() < 1e-12);
        }
    }

    #[test]
    fn consecutive_relations() {
        assert_eq!(consecutive(3, 3, &Consecutive::Vertex { v: q(0), e: Q2::from_ratio(1, 2) }).unwrap(), q(1));
        let kp = consecutive(3, 3, &Consecutive::Polyhedron { p: q(5), f: q(7) }).unwrap();
        assert_eq!(kp, q(21) - q(5));
        let kf = consecutive(3, 4, &Consecutive::Face { f: q(0), e: q(3), p: q(6) }).unwrap();
        assert_eq!(kf, q(2) * (Q2::from_ratio(2, 3) * q(3) + Q2::from_ratio(1, 3) * q(6)));
        assert!(consecutive(3, 6, &Consecutive::Vertex { v: q(0), e: q(0) }).is_err());
    }

    #[test]
    fn face_equation() {
        assert_eq!(face_from_three(3, [&q(0), &q(0), &q(1)]).unwrap(), Q2::from_ratio(1, 3));
        assert_eq!(face_from_three(4, [&q(0), &q(0), &q(1)]).unwrap(), Q2::from_ratio(1, 2));
    }

    #[test]
    fn next_polyhedron_roots() {
        let (a, b) = solve_next_polyhedron(3, 3, [&q(-3), &q(5), &q(8)]).unwrap();
        assert_eq!((a, b), (Q2::from_ratio(11, 2), Q2::from_ratio(9, 2)));
        let (a, b) = solve_next_polyhedron(3, 4, [&q(-2), &q(4), &q(5)]).unwrap();
        assert_eq!((a, b), (q(9), q(5)));
        let (a, b) = solve_next_polyhedron(3, 4, [&q(0), &q(0), &q(1)]).unwrap();
        assert_eq!(a, b);
        assert!(matches!(solve_next_polyhedron(3, 3, [&q(1), &q(-5), &q(1)]), Err(DescartesError::NegativeDiscriminant(_))));
        assert_eq!(solid_recurrence(&Recurrence::OctahedronNext([q(-2), q(4), q(5)])).unwrap(), vec![q(9), q(5)]);
    }

    #[test]
    fn closed_forms_agree_with_general_solver() {
        let f: Q5 = phi().unwrap();
        let k = [Q5::from_int(-4), Q5::from_int(8), Q5::from_int(9)];
        let ico = solid_recurrence(&Recurrence::IcosahedronNext(k.clone())).unwrap();
        let (a, b) = solve_next_polyhedron(3, 5, [&k[0], &k[1], &k[2]]).unwrap();
        assert_eq!(ico, vec![a, b]);
        let f2 = f.clone() * f.clone();
        assert_eq!(ico[0], f2.clone() * Q5::from_int(13) + f2.clone() * f.clone() * Q5::from_int(2));
        let k = [Q5::from_int(-1), f.clone() + Q5::from_int(1), Q5::from_int(2) * f.clone()];
        // middle disk −1
        let t = [k[1].clone(), k[0].clone(), k[2].clone()];
        let dod = solid_recurrence(&Recurrence::DodecahedronNext(t.clone())).unwrap();
        let (a, b) = solve_next_polyhedron(5, 3, [&t[0], &t[1], &t[2]]).unwrap();
        assert_eq!(dod, vec![a, b]);
        let k2 = [q(5), q(-3), q(12)];
        let cube = solid_recurrence(&Recurrence::CubeNext(k2.clone())).unwrap();
        let (a, b) = solve_next_polyhedron(4, 3, [&k2[0], &k2[1], &k2[2]]).unwrap();
        assert_eq!(cube, vec![a, b]);
    }

    proptest! {
        #[test]
        fn root_sum_is_consecutive_relation(k in prop::array::uniform3(1i64..50), pq in 0usize..5) {
            let (p, qq) = PLATONIC[pq].platonic_pq().unwrap();
            let k = k.map(|x| x as f64);
            if let Ok((a, b)) = solve_next_polyhedron(p, qq, [&k[0], &k[1], &k[2]]) {
                let kf = face_from_three(p, [&k[0], &k[1], &k[2]]).unwrap();
                let other = consecutive(p, qq, &Consecutive::Polyhedron { p: a, f: kf }).unwrap();
                prop_assert!((other - b).abs() <= 1e-9 * b.abs().max(1.0));
            }
        }
    }

    #[test]
    fn integrality_examples() {
        let r = integrality_condition(TETRAHEDRON, &[q(-3), q(5), q(8)]).unwrap();
        assert_eq!(r.certificate, Certificate::Integral);
        assert_eq!(r.radical, Some(q(1)));
        let r = integrality_condition(OCTAHEDRON, &[q(-2), q(4), q(5)]).unwrap();
        assert_eq!((r.certificate, r.radical), (Certificate::Integral, Some(q(2))));
        let r = integrality_condition(TETRAHEDRON, &[q(0), q(0), q(1)]).unwrap();
        assert_eq!((r.certificate, r.radical), (Certificate::Integral, Some(q(0))));
        let r = integrality_condition(CUBE, &[q(-3), q(5), q(12)]).unwrap();
        assert_eq!(r.certificate, Certificate::Integral);
        assert_eq!(r.triple[1], q(-3));
        let r = integrality_condition(TETRAHEDRON, &[q(1), q(1), q(1)]).unwrap();
        assert_eq!(r.certificate, Certificate::NotCertified);
        let f: Q5 = phi().unwrap();
        let k = [Q5::from_int(-1), f.clone() + Q5::from_int(1), Q5::from_int(2) * f];
        assert_eq!(integrality_condition(DODECAHEDRON, &k).unwrap().certificate, Certificate::PhiIntegral);
        let k = [-4, 8, 9].map(Q5::from_int);
        assert_eq!(integrality_condition(ICOSAHEDRON, &k).unwrap().certificate, Certificate::PhiIntegral);
    }

    #[test]
    fn descartes_in_tetrahedral_cluster() {
        let c = cluster_from_curvatures(TETRAHEDRON, &[q(-3), q(5), q(8)], 3).unwrap();
        let balls: Vec<Ball<Q2>> = c.balls().cloned().collect();
        let quads = tangent_cliques(&balls, 4);
        assert!(quads.len() > 20);
        for t in quads {
            let k: Vec<Q2> = t.iter().map(|&i| balls[i].curvature()).collect();
            assert_eq!(soddy_gosset_residual(&k), q(0));
        }
    }

    #[test]
    fn soddy_gosset_for_simplices() {
        assert_eq!(soddy_gosset_residual(&[q(-3), q(5), q(8), q(12)]), q(0));
        for n in 3..=5 {
            let a = project(&regular_edge_scribed::<f64>(Solid::Simplex(n)).unwrap()).unwrap();
            let r = soddy_gosset_residual(&a.curvatures());
            let scale = a.curvatures().iter().map(|x| x * x).sum::<f64>().max(1.0);
            assert!(r.abs() / scale < 1e-9, "n = {n}: {r}");
            for f in flag_curvatures(&a).unwrap() {
                assert!(simplex_flag_residual(&f).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn recurrences_match_matrices() {
        let k = [q(-2), q(4), q(5)];
        let seed = seed_from_curvatures(OCTAHEDRON, &k).unwrap();
        let c = generate_cluster(&seed.packing.primal, &seed.generators, 3).unwrap();
        let r = recurrence_cross_check(&seed, &c).unwrap();
        assert_eq!(r.compared, c.len());
        assert_eq!(r.mismatches, 0);
        for s in [TETRAHEDRON, CUBE] {
            let seed = seed_from_curvatures(s, &[q(0), q(0), q(1)]).unwrap();
            let c = generate_cluster(&seed.packing.primal, &seed.generators, 2).unwrap();
            let r = recurrence_cross_check(&seed, &c).unwrap();
            assert_eq!((r.compared, r.mismatches), (c.len(), 0), "{s}");
        }
        for s in [ICOSAHEDRON, DODECAHEDRON] {
            let f: Q5 = phi().unwrap();
            let k = if s == ICOSAHEDRON {
                [-4, 8, 9].map(Q5::from_int)
            } else {
                [Q5::from_int(-1), f.clone() + Q5::from_int(1), Q5::from_int(2) * f]
            };
            let seed = seed_from_curvatures(s, &k).unwrap();
            let c = generate_cluster(&seed.packing.primal, &seed.generators, 2).unwrap();
            let r = recurrence_cross_check(&seed, &c).unwrap();
            assert_eq!((r.compared, r.mismatches), (c.len(), 0), "{s}");
        }
    }

    #[test]
    fn float_cluster_cross_check() {
        let c = standard_cluster::<f64>(CUBE, 2).unwrap();
        assert!(c.len() > 8);
        let seed = seed_from_curvatures::<f64>(CUBE, &[0.0, 0.0, 1.0]).unwrap();
        let c = generate_cluster(&seed.packing.primal, &seed.generators, 2).unwrap();
        let r = recurrence_cross_check(&seed, &c).unwrap();
        assert_eq!(r.mismatches, 0);
        let _ = cluster_from_curvatures::<f64>(CUBE, &[0.0, 0.0, 1.0], 1).unwrap();
    }
}
