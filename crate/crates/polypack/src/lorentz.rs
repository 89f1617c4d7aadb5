//! Balls of `R^d ∪ {∞}` as unit space-like vectors of `L^{d+1,1}`.

use std::fmt;

use thiserror::Error;

use crate::numeric::{dot, Mat, NumericError, Scalar, FLOAT_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LorentzError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("vector is not normalized (<v,v> = {0})")]
    NotNormalized(f64),
    #[error("a centered ball needs nonzero curvature")]
    ZeroCurvature,
    #[error("both vectors are past-directed")]
    BothPastDirected,
    #[error("matrix does not preserve the Lorentzian form")]
    NotLorentz,
    #[error("matrix is not orthochronous")]
    NotOrthochronous,
    #[error("normalization drift {0} exceeds tolerance")]
    Drift(f64),
    #[error("point is not outside the unit sphere")]
    NotOuterSphere,
    #[error("vector is not future-directed")]
    NotFutureDirected,
    #[error("reflection vector must be space-like")]
    NotSpaceLike,
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Largest normalization drift `apply` repairs silently in float mode.
pub const DRIFT_TOL: f64 = 1e-6;

/// A vector of `L^{d+1,1}`; the last coordinate is the time-like one.
#[derive(Clone, Debug, PartialEq)]
pub struct LVector<S>(pub Vec<S>);

impl<S: Scalar> LVector<S> {
    pub fn new(coords: Vec<S>) -> Self {
        assert!(coords.len() >= 3, "L-vectors need at least 3 coordinates");
        LVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| S::from_i64(c)).collect())
    }

    /// The `d` of `L^{d+1,1}`.
    pub fn dim(&self) -> usize {
        self.0.len() - 2
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    /// Unit vector `e_i` (0-based) of `L^{d+1,1}`.
    pub fn basis(d: usize, i: usize) -> Self {
        Self::new((0..d + 2).map(|j| if i == j { S::one() } else { S::zero() }).collect())
    }

    /// `x_N = e_{d+1} + e_{d+2}`, the point at infinity.
    pub fn north(d: usize) -> Self {
        Self::new((0..d + 2).map(|j| if j >= d { S::one() } else { S::zero() }).collect())
    }

    pub fn dot(&self, other: &Self) -> S {
        let n = self.0.len();
        let space = dot(&self.0[..n - 1], &other.0[..n - 1]);
        space - self.0[n - 1].clone() * other.0[n - 1].clone()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::new(self.0.iter().map(|a| a.clone() * k.clone()).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.0.iter().map(|a| -a.clone()).collect())
    }

    /// `κ(x) = −<x_N, x> = x_{d+2} − x_{d+1}`.
    pub fn curvature(&self) -> S {
        let n = self.0.len();
        self.0[n - 1].clone() - self.0[n - 2].clone()
    }

    pub fn time(&self) -> &S {
        &self.0[self.0.len() - 1]
    }

    pub fn is_past_directed(&self) -> bool {
        self.time().sign(FLOAT_TOL) < 0
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> LVector<f64> {
        LVector(self.0.iter().map(Scalar::to_f64).collect())
    }
}

/// Lorentzian product `x₁y₁ + … + x_{d+1}y_{d+1} − x_{d+2}y_{d+2}`.
pub fn lorentz_product<S: Scalar>(x: &LVector<S>, y: &LVector<S>) -> Result<S, LorentzError> {
    if x.0.len() != y.0.len() {
        return Err(LorentzError::DimensionMismatch(x.0.len(), y.0.len()));
    }
    Ok(x.dot(y))
}

pub fn curvature<S: Scalar>(x: &LVector<S>) -> S {
    x.curvature()
}

/// A d-ball: disk, disk complement or half-space.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball<S> {
    v: LVector<S>,
}

impl<S: Scalar> Ball<S> {
    /// Checks `<v,v> = 1`, exactly or within `FLOAT_TOL`.
    pub fn new(v: LVector<S>) -> Result<Self, LorentzError> {
        let n = v.dot(&v);
        if !n.approx_eq(&S::one(), FLOAT_TOL * v.max_abs().max(1.0)) {
            return Err(LorentzError::NotNormalized(n.to_f64()));
        }
        Ok(Ball { v })
    }

    pub fn new_unchecked(v: LVector<S>) -> Self {
        Ball { v }
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self, LorentzError> {
        Self::new(LVector::from_i64(coords))
    }

    pub fn vector(&self) -> &LVector<S> {
        &self.v
    }

    pub fn coords(&self) -> &[S] {
        &self.v.0
    }

    pub fn dim(&self) -> usize {
        self.v.dim()
    }

    pub fn curvature(&self) -> S {
        self.v.curvature()
    }

    /// The complementary ball, `−v`.
    pub fn complement(&self) -> Self {
        Ball { v: self.v.neg() }
    }

    pub fn product(&self, other: &Self) -> S {
        self.v.dot(&other.v)
    }

    pub fn key(&self) -> Vec<S::Key> {
        self.v.0.iter().map(Scalar::key).collect()
    }

    pub fn to_f64(&self) -> Ball<f64> {
        Ball { v: self.v.to_f64() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// The bounded disk.
    Interior,
    /// The closure of the disk's complement (negative curvature).
    Exterior,
}

/// Euclidean description of a ball.
#[derive(Clone, Debug, PartialEq)]
pub enum BallGeometry<S> {
    Disk { center: Vec<S>, radius: S, orientation: Orientation },
    /// `{x : x·normal ≥ offset}` with a unit normal.
    HalfSpace { normal: Vec<S>, offset: S },
}

/// Ball with given center and signed curvature.
pub fn ball_from_center<S: Scalar>(center: &[S], curvature: &S) -> Result<Ball<S>, LorentzError> {
    if curvature.is_zero() {
        return Err(LorentzError::ZeroCurvature);
    }
    let k = curvature.clone();
    let inv = S::one().checked_div(&k)?;
    let c2 = dot(center, center);
    let base = k.clone() * c2 - inv;
    let two = S::from_i64(2);
    let mut v: Vec<S> = center.iter().map(|c| k.clone() * c.clone()).collect();
    v.push((base.clone() - k.clone()) / two.clone());
    v.push((base + k) / two);
    Ball::new(LVector::new(v))
}

/// Half-space `{x : x·normal ≥ delta}`; the normal must be a unit vector.
pub fn ball_from_halfspace<S: Scalar>(normal: &[S], delta: &S) -> Result<Ball<S>, LorentzError> {
    let mut v = normal.to_vec();
    v.push(delta.clone());
    v.push(delta.clone());
    Ball::new(LVector::new(v))
}

pub fn ball_from_geometry<S: Scalar>(g: &BallGeometry<S>) -> Result<Ball<S>, LorentzError> {
    match g {
        BallGeometry::Disk { center, radius, orientation } => {
            let k = S::one().checked_div(radius)?;
            let k = match orientation {
                Orientation::Interior => k,
                Orientation::Exterior => -k,
            };
            ball_from_center(center, &k)
        }
        BallGeometry::HalfSpace { normal, offset } => ball_from_halfspace(normal, offset),
    }
}

/// Curvatures below this magnitude are read as half-spaces in float mode.
const FLAT_TOL: f64 = 1e-12;

pub fn geometry_from_ball<S: Scalar>(b: &Ball<S>) -> BallGeometry<S> {
    let d = b.dim();
    let x = b.coords();
    let k = b.curvature();
    if k.sign(FLAT_TOL) == 0 {
        return BallGeometry::HalfSpace { normal: x[..d].to_vec(), offset: x[d].clone() };
    }
    let center = x[..d].iter().map(|c| c.clone() / k.clone()).collect();
    let orientation = if k.sign(0.0) > 0 { Orientation::Interior } else { Orientation::Exterior };
    BallGeometry::Disk { center, radius: S::one() / k.abs(), orientation }
}

/// Mutual position of two balls, read off their inversive product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    Equal,
    Disjoint,
    ExternallyTangent,
    Orthogonal,
    InternallyTangent,
    Nested,
    Overlapping,
}

impl Position {
    /// Tangent or disjoint, the pairs a packing allows.
    pub fn is_packing_pair(self) -> bool {
        matches!(self, Position::Disjoint | Position::ExternallyTangent)
    }
}

/// Float tolerance for comparing an inversive product of `x` and `y` with
/// the thresholds `−1, 0, 1`; it grows with the coordinate magnitudes once
/// the products leave the range where `1e-9` is meaningful.
pub fn product_tol<S: Scalar>(x: &LVector<S>, y: &LVector<S>) -> f64 {
    FLOAT_TOL * (x.max_abs() * y.max_abs() * 1e-4).max(1.0)
}

pub fn classify_pair<S: Scalar>(b: &Ball<S>, c: &Ball<S>) -> Result<Position, LorentzError> {
    if b.dim() != c.dim() {
        return Err(LorentzError::DimensionMismatch(b.dim(), c.dim()));
    }
    if b.vector().is_past_directed() && c.vector().is_past_directed() {
        return Err(LorentzError::BothPastDirected);
    }
    let tol = product_tol(b.vector(), c.vector());
    if b.vector().approx_eq(c.vector(), tol) {
        return Ok(Position::Equal);
    }
    let p = b.product(c);
    let vs = |t: i64| (p.clone() - S::from_i64(t)).sign(tol);
    Ok(match (vs(-1), vs(0), vs(1)) {
        (-1, _, _) => Position::Disjoint,
        (0, _, _) => Position::ExternallyTangent,
        (_, 0, _) => Position::Orthogonal,
        (_, _, 0) => Position::InternallyTangent,
        (_, _, 1) => Position::Nested,
        _ => Position::Overlapping,
    })
}

/// `Q = diag(1, …, 1, −1)` of size `n`.
pub fn lorentz_form<S: Scalar>(n: usize) -> Mat<S> {
    Mat::from_fn(n, n, |i, j| match (i == j, i == n - 1) {
        (true, false) => S::one(),
        (true, true) => -S::one(),
        _ => S::zero(),
    })
}

/// An element of the orthochronous Lorentz group acting on balls.
#[derive(Clone, PartialEq)]
pub struct MobiusMap<S> {
    mat: Mat<S>,
}

impl<S: Scalar> MobiusMap<S> {
    /// Validates `MᵀQM = Q` and a positive bottom-right entry.
    pub fn new(mat: Mat<S>) -> Result<Self, LorentzError> {
        if !mat.is_square() || mat.rows() < 3 {
            return Err(LorentzError::DimensionMismatch(mat.rows(), mat.cols()));
        }
        let n = mat.rows();
        let q = lorentz_form::<S>(n);
        let lhs = mat.transpose().mul(&q).mul(&mat);
        let scale = mat.to_f64().to_rows().iter().flatten().fold(1.0f64, |m, x| m.max(x.abs()));
        if !lhs.approx_eq(&q, FLOAT_TOL * scale * scale) {
            return Err(LorentzError::NotLorentz);
        }
        if mat[(n - 1, n - 1)].sign(0.0) <= 0 {
            return Err(LorentzError::NotOrthochronous);
        }
        Ok(MobiusMap { mat })
    }

    pub fn new_unchecked(mat: Mat<S>) -> Self {
        MobiusMap { mat }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, LorentzError> {
        Self::new(Mat::from_i64_rows(rows))
    }

    pub fn identity(d: usize) -> Self {
        MobiusMap { mat: Mat::identity(d + 2) }
    }

    pub fn mat(&self) -> &Mat<S> {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows() - 2
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        MobiusMap { mat: self.mat.mul(&other.mat) }
    }

    /// `Q Mᵀ Q`, the inverse of any Lorentz matrix.
    pub fn inverse(&self) -> Self {
        let q = lorentz_form::<S>(self.mat.rows());
        MobiusMap { mat: q.mul(&self.mat.transpose()).mul(&q) }
    }

    /// `self ∘ g ∘ self⁻¹`.
    pub fn conjugate(&self, g: &Self) -> Self {
        self.compose(g).compose(&self.inverse())
    }

    pub fn pow(&self, n: u32) -> Self {
        MobiusMap { mat: self.mat.pow(n) }
    }

    pub fn is_involution(&self, tol: f64) -> bool {
        self.mat.mul(&self.mat).approx_eq(&Mat::identity(self.mat.rows()), tol)
    }

    pub fn apply_vector(&self, v: &LVector<S>) -> LVector<S> {
        LVector(self.mat.mul_vec(&v.0))
    }

    /// Image of a ball; float results are renormalized, failing past `DRIFT_TOL`.
    pub fn apply(&self, b: &Ball<S>) -> Result<Ball<S>, LorentzError> {
        if b.dim() != self.dim() {
            return Err(LorentzError::DimensionMismatch(b.dim(), self.dim()));
        }
        renormalize(self.apply_vector(b.vector()))
    }

    pub fn to_f64(&self) -> MobiusMap<f64> {
        MobiusMap { mat: self.mat.to_f64() }
    }
}

impl<S: fmt::Debug> fmt::Debug for MobiusMap<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MobiusMap{:?}", self.mat)
    }
}

/// Ball from the image of a unit vector: exact values pass through, floats
/// are rescaled onto `<w,w> = 1`, failing past `DRIFT_TOL`.
pub(crate) fn renormalize<S: Scalar>(w: LVector<S>) -> Result<Ball<S>, LorentzError> {
    if S::EXACT {
        return Ok(Ball::new_unchecked(w));
    }
    let n = w.dot(&w).to_f64();
    let drift = (n - 1.0).abs();
    if drift > DRIFT_TOL * w.max_abs().max(1.0) {
        return Err(LorentzError::Drift(drift));
    }
    // below the rounding noise of <w,w> itself, rescaling only adds error
    let noise = 64.0 * f64::EPSILON * w.0.iter().map(|x| x.to_f64().powi(2)).sum::<f64>();
    if drift <= noise {
        return Ok(Ball::new_unchecked(w));
    }
    let r = S::from_f64(n.sqrt())?;
    Ok(Ball::new_unchecked(LVector(w.0.into_iter().map(|x| x / r.clone()).collect())))
}

/// Lorentz reflection `I − 2 w wᵀQ / <w,w>` in a space-like vector.
pub fn reflection<S: Scalar>(w: &LVector<S>) -> Result<MobiusMap<S>, LorentzError> {
    let ww = w.dot(w);
    if ww.sign(FLOAT_TOL) <= 0 {
        return Err(LorentzError::NotSpaceLike);
    }
    let n = w.0.len();
    let two = S::from_i64(2);
    let mat = Mat::from_fn(n, n, |i, j| {
        let qj = if j == n - 1 { -w.0[j].clone() } else { w.0[j].clone() };
        let e = if i == j { S::one() } else { S::zero() };
        e - two.clone() * w.0[i].clone() * qj / ww.clone()
    });
    Ok(MobiusMap::new_unchecked(mat))
}

/// Inversion in the boundary of `b`: `I − 2 x xᵀ Q`.
pub fn inversion_map<S: Scalar>(b: &Ball<S>) -> MobiusMap<S> {
    let x = b.coords();
    let n = x.len();
    let two = S::from_i64(2);
    let mat = Mat::from_fn(n, n, |i, j| {
        let qj = if j == n - 1 { -x[j].clone() } else { x[j].clone() };
        let e = if i == j { S::one() } else { S::zero() };
        e - two.clone() * x[i].clone() * qj
    });
    MobiusMap::new_unchecked(mat)
}

pub fn apply<S: Scalar>(m: &MobiusMap<S>, b: &Ball<S>) -> Result<Ball<S>, LorentzError> {
    m.apply(b)
}

/// Möbius map of the Euclidean translation `x ↦ x + t`.
pub fn translation<S: Scalar>(t: &[S]) -> MobiusMap<S> {
    let d = t.len();
    let n = d + 2;
    let half_t2 = dot(t, t) / S::from_i64(2);
    // y' = y + κt,  x_{d+1}' = x_{d+1} + t·y + κ|t|²/2, same for x_{d+2}; κ = x_{d+2} − x_{d+1}
    let mat = Mat::from_fn(n, n, |i, j| {
        let e = if i == j { S::one() } else { S::zero() };
        if i < d {
            return match j {
                j if j == d => e - t[i].clone(),
                j if j == d + 1 => e + t[i].clone(),
                _ => e,
            };
        }
        if j < d {
            t[j].clone()
        } else if j == d {
            e - half_t2.clone()
        } else {
            e + half_t2.clone()
        }
    });
    MobiusMap::new_unchecked(mat)
}

/// Möbius map of the dilation `x ↦ λx`, `λ > 0`.
pub fn dilation<S: Scalar>(d: usize, lambda: &S) -> Result<MobiusMap<S>, LorentzError> {
    let n = d + 2;
    let inv = S::one().checked_div(lambda)?;
    let two = S::from_i64(2);
    let plus = (lambda.clone() + inv.clone()) / two.clone();
    let minus = (lambda.clone() - inv) / two;
    // (x_{d+1} + x_{d+2}) scales by λ, (x_{d+2} − x_{d+1}) by 1/λ
    let mat = Mat::from_fn(n, n, |i, j| match (i, j) {
        (i, j) if i < d || j < d => if i == j { S::one() } else { S::zero() },
        (i, j) if i == j => plus.clone(),
        _ => minus.clone(),
    });
    Ok(MobiusMap::new_unchecked(mat))
}

/// Möbius map of a Euclidean orthogonal map of `R^d`.
pub fn euclidean_linear<S: Scalar>(r: &Mat<S>) -> MobiusMap<S> {
    let d = r.rows();
    let n = d + 2;
    let mat = Mat::from_fn(n, n, |i, j| {
        if i < d && j < d {
            r[(i, j)].clone()
        } else if i == j {
            S::one()
        } else {
            S::zero()
        }
    });
    MobiusMap::new_unchecked(mat)
}

/// Light source `u ∈ E^{d+1}` of a future-directed ball.
pub fn light_source<S: Scalar>(b: &Ball<S>) -> Result<Vec<S>, LorentzError> {
    let x = b.coords();
    let t = x[x.len() - 1].clone();
    if t.sign(FLOAT_TOL) <= 0 {
        return Err(LorentzError::NotFutureDirected);
    }
    Ok(x[..x.len() - 1].iter().map(|c| c.clone() / t.clone()).collect())
}

/// Ball lit by the outer-sphere point `u`: `(u, 1)/√(‖u‖² − 1)`.
pub fn ball_from_light_source<S: Scalar>(u: &[S]) -> Result<Ball<S>, LorentzError> {
    let s = dot(u, u) - S::one();
    if s.sign(FLOAT_TOL) <= 0 {
        return Err(LorentzError::NotOuterSphere);
    }
    let r = s.sqrt_hosted()?;
    let mut v: Vec<S> = u.iter().map(|c| c.clone() / r.clone()).collect();
    v.push(S::one() / r);
    Ball::new(LVector::new(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{Q2, Q3};
    use proptest::prelude::*;

    fn q(n: i64) -> Q2 {
        Q2::from_int(n)
    }

    #[test]
    fn products() {
        let a = LVector::<Q2>::from_i64(&[0, 0, 1, 1]);
        assert_eq!(lorentz_product(&a, &a).unwrap(), q(0));
        let b = LVector::<Q2>::from_i64(&[0, 0, -1, 0]);
        let c = LVector::<Q2>::from_i64(&[2, 0, 1, 2]);
        assert_eq!(lorentz_product(&b, &c).unwrap(), q(-1));
        let short = LVector::<Q2>::from_i64(&[0, 1, 1]);
        assert!(lorentz_product(&a, &short).is_err());
    }

    #[test]
    fn geometry_round_trips() {
        let unit = ball_from_center(&[q(0), q(0)], &q(1)).unwrap();
        assert_eq!(unit.coords(), LVector::<Q2>::from_i64(&[0, 0, -1, 0]).coords());
        let lam = Q2::from_ratio(3, 2);
        let h = ball_from_halfspace(&[q(0), q(1)], &lam).unwrap();
        assert_eq!(h.coords(), &[q(0), q(1), lam.clone(), lam.clone()]);
        assert_eq!(h.curvature(), q(0));
        assert_eq!(geometry_from_ball(&h), BallGeometry::HalfSpace { normal: vec![q(0), q(1)], offset: lam });
        let far = ball_from_center(&[q(2), q(0)], &q(1)).unwrap();
        assert_eq!(far.coords(), LVector::<Q2>::from_i64(&[2, 0, 1, 2]).coords());
        assert_eq!(far.curvature(), q(1));
        assert_eq!(
            geometry_from_ball(&far),
            BallGeometry::Disk { center: vec![q(2), q(0)], radius: q(1), orientation: Orientation::Interior }
        );
        let g = BallGeometry::Disk { center: vec![q(1), q(-3)], radius: Q2::from_ratio(1, 5), orientation: Orientation::Exterior };
        assert_eq!(geometry_from_ball(&ball_from_geometry(&g).unwrap()), g);
        assert!(ball_from_center(&[q(0), q(0)], &q(0)).is_err());
    }

    #[test]
    fn classification_table() {
        let a = ball_from_center(&[q(0), q(0)], &q(1)).unwrap();
        let b = ball_from_center(&[q(2), q(0)], &q(1)).unwrap();
        assert_eq!(classify_pair(&a, &b).unwrap(), Position::ExternallyTangent);
        let up = Ball::<Q2>::from_i64(&[0, 1, 1, 1]).unwrap();
        let down = Ball::<Q2>::from_i64(&[0, -1, 1, 1]).unwrap();
        assert_eq!(classify_pair(&up, &down).unwrap(), Position::ExternallyTangent);
        assert_eq!(classify_pair(&a, &a).unwrap(), Position::Equal);
        let x = Ball::<Q2>::from_i64(&[1, 0, 0, 0]).unwrap();
        assert_eq!(classify_pair(&x, &up).unwrap(), Position::Orthogonal);
        let small = ball_from_center(&[q(0), q(0)], &q(2)).unwrap();
        assert_eq!(classify_pair(&a, &small).unwrap(), Position::Nested);
        let inner = ball_from_center(&[Q2::from_ratio(1, 2), q(0)], &q(2)).unwrap();
        assert_eq!(classify_pair(&a, &inner).unwrap(), Position::InternallyTangent);
        let cross = ball_from_center(&[q(1), q(0)], &q(1)).unwrap();
        assert_eq!(classify_pair(&a, &cross).unwrap(), Position::Overlapping);
        let far = ball_from_center(&[q(5), q(0)], &q(1)).unwrap();
        assert_eq!(classify_pair(&a, &far).unwrap(), Position::Disjoint);
        assert_eq!(classify_pair(&b.complement(), &far.complement()), Err(LorentzError::BothPastDirected));
    }

    #[test]
    fn inversions() {
        let s = inversion_map(&Ball::<Q2>::from_i64(&[1, 0, 0, 0]).unwrap());
        assert_eq!(s.mat(), &Mat::diag(&[q(-1), q(1), q(1), q(1)]));
        let s_star = inversion_map(&Ball::<Q2>::from_i64(&[0, 1, 1, 1]).unwrap());
        let printed = Mat::from_i64_rows(&[&[1, 0, 0, 0], &[0, -1, -2, 2], &[0, -2, -1, 2], &[0, -2, -2, 3]]);
        assert_eq!(s_star.mat(), &printed);
        let unit = Ball::<Q2>::from_i64(&[0, 0, -1, 0]).unwrap();
        let inv = inversion_map(&unit);
        assert_eq!(inv.mat(), &Mat::diag(&[q(1), q(1), q(-1), q(1)]));
        let img = inv.apply(&Ball::from_i64(&[2, 0, 1, 2]).unwrap()).unwrap();
        assert_eq!(img.coords(), LVector::<Q2>::from_i64(&[2, 0, -1, 2]).coords());
        assert_eq!(img.curvature(), q(3));
        assert_eq!(
            geometry_from_ball(&img),
            BallGeometry::Disk { center: vec![Q2::from_ratio(2, 3), q(0)], radius: Q2::from_ratio(1, 3), orientation: Orientation::Interior }
        );
        for m in [&s, &s_star, &inv] {
            assert!(m.is_involution(0.0));
            assert!(MobiusMap::new(m.mat().clone()).is_ok());
        }
        let lam = Q2::from_ratio(7, 3);
        let h = Ball::new(LVector::new(vec![q(0), q(1), lam.clone(), lam])).unwrap();
        assert_eq!(s.apply(&h).unwrap(), h);
        assert_eq!(MobiusMap::identity(2).apply(&h).unwrap(), h);
    }

    #[test]
    fn conjugation_moves_inversion() {
        let e = MobiusMap::<Q2>::new(Mat::from_rows(vec![
            vec![q(1), q(0), q(0), q(0)],
            vec![q(0), Q2::from_ratio(1, 2), q(1), Q2::from_ratio(-1, 2)],
            vec![q(0), q(1), q(-1), q(1)],
            vec![q(0), Q2::from_ratio(1, 2), q(-1), Q2::from_ratio(3, 2)],
        ]).unwrap())
        .unwrap();
        let b = Ball::<Q2>::from_i64(&[1, 0, 0, 0]).unwrap();
        let lhs = e.compose(&inversion_map(&b)).compose(&e);
        assert_eq!(lhs, inversion_map(&e.apply(&b).unwrap()));
    }

    #[test]
    fn euclidean_moves() {
        let b = ball_from_center(&[q(1), q(2)], &q(3)).unwrap();
        let t = translation(&[q(-1), Q2::from_ratio(1, 2)]);
        assert!(MobiusMap::new(t.mat().clone()).is_ok());
        let g = geometry_from_ball(&t.apply(&b).unwrap());
        assert_eq!(g, BallGeometry::Disk { center: vec![q(0), Q2::from_ratio(5, 2)], radius: Q2::from_ratio(1, 3), orientation: Orientation::Interior });
        let h = ball_from_halfspace(&[q(0), q(1)], &q(1)).unwrap();
        let moved = t.apply(&h).unwrap();
        assert_eq!(geometry_from_ball(&moved), BallGeometry::HalfSpace { normal: vec![q(0), q(1)], offset: Q2::from_ratio(3, 2) });
        let dl = dilation(2, &q(2)).unwrap();
        assert!(MobiusMap::new(dl.mat().clone()).is_ok());
        let g = geometry_from_ball(&dl.apply(&b).unwrap());
        assert_eq!(g, BallGeometry::Disk { center: vec![q(2), q(4)], radius: Q2::from_ratio(2, 3), orientation: Orientation::Interior });
    }

    #[test]
    fn light_sources() {
        let r3 = Q3::sqrt_m();
        let odd = vec![Q3::from_int(0), Q3::from_int(0), r3.clone()];
        assert!(matches!(ball_from_light_source(&odd), Err(LorentzError::Numeric(NumericError::NotHosted(_)))));
        let uf: Vec<f64> = odd.iter().map(|x| x.to_f64()).collect();
        let bf = ball_from_light_source(&uf).unwrap();
        assert!((bf.curvature() - (1.0 - 3f64.sqrt()) / 2f64.sqrt()).abs() < 1e-12);
        let u = vec![Q3::from_int(1), Q3::from_int(1), r3];
        let b = ball_from_light_source(&u).unwrap();
        assert_eq!(b.curvature(), Q3::from_ratio(1, 2) - Q3::surd(0, 1, 1, 2));
        assert_eq!(light_source(&b).unwrap(), u);
        let v1: Vec<Q2> = [1, 1, 1].iter().map(|&x| q(x)).collect();
        let v2: Vec<Q2> = [1, -1, -1].iter().map(|&x| q(x)).collect();
        let b1 = ball_from_light_source(&v1).unwrap();
        let b2 = ball_from_light_source(&v2).unwrap();
        assert_eq!(b1.product(&b2), q(-1));
        assert!(ball_from_light_source(&[q(0), q(0), Q2::from_ratio(1, 2)]).is_err());
    }

    fn lit(u: &[f64; 3]) -> Option<Ball<f64>> {
        ball_from_light_source(u.as_slice()).ok()
    }

    proptest! {
        #[test]
        fn light_source_product_law(u in prop::array::uniform3(-3.0f64..3.0), v in prop::array::uniform3(-3.0f64..3.0)) {
            let nu: f64 = u.iter().map(|x| x * x).sum();
            let nv: f64 = v.iter().map(|x| x * x).sum();
            prop_assume!(nu > 1.05 && nv > 1.05);
            let (bu, bv) = (lit(&u).unwrap(), lit(&v).unwrap());
            let uv: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
            let want = (uv - 1.0) / ((nu - 1.0) * (nv - 1.0)).sqrt();
            prop_assert!((bu.product(&bv) - want).abs() < 1e-9 * want.abs().max(1.0));
            let back = light_source(&bu).unwrap();
            prop_assert!(back.iter().zip(&u).all(|(a, b)| (a - b).abs() < 1e-12));
        }

        #[test]
        fn maps_preserve_products(cx in -1.5f64..1.5, cy in -1.5f64..1.5, k in 0.5f64..2.0, tx in -1.0f64..1.0, s in 0.5f64..2.0) {
            let b1 = ball_from_center(&[cx, cy], &k).unwrap();
            let b2 = ball_from_center(&[cy, cx], &(-k)).unwrap();
            let m = translation(&[tx, -tx]).compose(&dilation(2, &s).unwrap()).compose(&inversion_map(&b1));
            prop_assert!(MobiusMap::new(m.mat().clone()).is_ok());
            let (i1, i2) = (m.apply(&b1).unwrap(), m.apply(&b2).unwrap());
            prop_assert!((i1.product(&i2) - b1.product(&b2)).abs() < 1e-8 * b1.product(&b2).abs().max(1.0));
            let g = geometry_from_ball(&b2);
            let back = ball_from_geometry(&g).unwrap();
            prop_assert!(back.vector().approx_eq(b2.vector(), 1e-9));
        }
    }
}
