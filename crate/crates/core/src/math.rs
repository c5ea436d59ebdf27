//! Small fixed-size linear algebra: 2/3-vectors, 3x3 matrices, axis-angle
//! rotations and their analytic derivatives.

use crate::scalar::{c, Real};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

/// Row-major 3x3 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3<T> {
    pub m: [[T; 3]; 3],
}

impl<T: Real> Vec2<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self { x: T::zero(), y: T::zero() }
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    /// 2D cross product (z component of the 3D cross).
    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    pub fn norm_sq(self) -> T {
        self.dot(self)
    }

    pub fn norm(self) -> T {
        self.norm_sq().sqrt()
    }

    /// Clockwise perpendicular (y, -x).
    pub fn perp(self) -> Self {
        Self { x: self.y, y: -self.x }
    }

    pub fn add(self, o: Self) -> Self {
        Self { x: self.x + o.x, y: self.y + o.y }
    }

    pub fn sub(self, o: Self) -> Self {
        Self { x: self.x - o.x, y: self.y - o.y }
    }

    pub fn scale(self, s: T) -> Self {
        Self { x: self.x * s, y: self.y * s }
    }
}

impl<T: Real> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self { x: T::zero(), y: T::zero(), z: T::zero() }
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Self) -> Self {
        Self {
            x: self.y * o.z - self.z * o.y,
            y: self.z * o.x - self.x * o.z,
            z: self.x * o.y - self.y * o.x,
        }
    }

    pub fn norm_sq(self) -> T {
        self.dot(self)
    }

    pub fn norm(self) -> T {
        self.norm_sq().sqrt()
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        if n == T::zero() {
            self
        } else {
            self.scale(T::one() / n)
        }
    }

    pub fn add(self, o: Self) -> Self {
        Self { x: self.x + o.x, y: self.y + o.y, z: self.z + o.z }
    }

    pub fn sub(self, o: Self) -> Self {
        Self { x: self.x - o.x, y: self.y - o.y, z: self.z - o.z }
    }

    pub fn scale(self, s: T) -> Self {
        Self { x: self.x * s, y: self.y * s, z: self.z * s }
    }

    pub fn component(self, i: usize) -> T {
        match i {
            0 => self.x,
            1 => self.y,
            _ => self.z,
        }
    }

    pub fn set_component(&mut self, i: usize, v: T) {
        match i {
            0 => self.x = v,
            1 => self.y = v,
            _ => self.z = v,
        }
    }

    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.set_component(i, T::one());
        v
    }
}

impl<T: Real> Mat3<T> {
    pub fn identity() -> Self {
        let o = T::one();
        let z = T::zero();
        Self { m: [[o, z, z], [z, o, z], [z, z, o]] }
    }

    pub fn zero() -> Self {
        let z = T::zero();
        Self { m: [[z; 3]; 3] }
    }

    /// Skew-symmetric (hat) matrix of `v`: hat(v) * u == v x u.
    pub fn hat(v: Vec3<T>) -> Self {
        let z = T::zero();
        Self {
            m: [[z, -v.z, v.y], [v.z, z, -v.x], [-v.y, v.x, z]],
        }
    }

    pub fn outer(a: Vec3<T>, b: Vec3<T>) -> Self {
        Self {
            m: [
                [a.x * b.x, a.x * b.y, a.x * b.z],
                [a.y * b.x, a.y * b.y, a.y * b.z],
                [a.z * b.x, a.z * b.y, a.z * b.z],
            ],
        }
    }

    pub fn transpose(self) -> Self {
        let m = self.m;
        Self {
            m: [
                [m[0][0], m[1][0], m[2][0]],
                [m[0][1], m[1][1], m[2][1]],
                [m[0][2], m[1][2], m[2][2]],
            ],
        }
    }

    pub fn mul_vec(self, v: Vec3<T>) -> Vec3<T> {
        Vec3 {
            x: self.m[0][0] * v.x + self.m[0][1] * v.y + self.m[0][2] * v.z,
            y: self.m[1][0] * v.x + self.m[1][1] * v.y + self.m[1][2] * v.z,
            z: self.m[2][0] * v.x + self.m[2][1] * v.y + self.m[2][2] * v.z,
        }
    }

    pub fn mul_mat(self, o: Self) -> Self {
        let mut r = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = T::zero();
                for k in 0..3 {
                    s += self.m[i][k] * o.m[k][j];
                }
                r.m[i][j] = s;
            }
        }
        r
    }

    pub fn add(self, o: Self) -> Self {
        let mut r = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                r.m[i][j] = self.m[i][j] + o.m[i][j];
            }
        }
        r
    }

    pub fn scale(self, s: T) -> Self {
        let mut r = self;
        for i in 0..3 {
            for j in 0..3 {
                r.m[i][j] = r.m[i][j] * s;
            }
        }
        r
    }

    /// Frobenius inner product sum_ij a_ij * b_ij.
    pub fn frob_dot(self, o: Self) -> T {
        let mut s = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                s += self.m[i][j] * o.m[i][j];
            }
        }
        s
    }
}

/// Rodrigues rotation matrix for an axis-angle vector.
pub fn rotation<T: Real>(w: Vec3<T>) -> Mat3<T> {
    let theta_sq = w.norm_sq();
    let hat = Mat3::hat(w);
    let hat_sq = hat.mul_mat(hat);
    if theta_sq < c::<T>(1e-16) {
        // second-order Taylor keeps the matrix orthogonal to O(theta^3)
        return Mat3::identity().add(hat).add(hat_sq.scale(c(0.5)));
    }
    let theta = theta_sq.sqrt();
    let a = theta.sin() / theta;
    let b = (T::one() - theta.cos()) / theta_sq;
    Mat3::identity().add(hat.scale(a)).add(hat_sq.scale(b))
}

/// Partial derivatives of `rotation(w)` with respect to the three
/// axis-angle components (Gallego & Yezzi closed form, with a Taylor
/// fallback near the identity).
pub fn rotation_jacobian<T: Real>(w: Vec3<T>) -> [Mat3<T>; 3] {
    let theta_sq = w.norm_sq();
    if theta_sq < c::<T>(1e-10) {
        let hat_w = Mat3::hat(w);
        let mut out = [Mat3::zero(); 3];
        for (i, d) in out.iter_mut().enumerate() {
            let e = Mat3::hat(Vec3::basis(i));
            // d/dw_i [I + hat(w) + hat(w)^2/2] at small w
            *d = e.add(e.mul_mat(hat_w).add(hat_w.mul_mat(e)).scale(c(0.5)));
        }
        return out;
    }
    let r = rotation(w);
    let mut out = [Mat3::zero(); 3];
    for (i, d) in out.iter_mut().enumerate() {
        let e = Vec3::basis(i);
        let ime = e.sub(r.mul_vec(e)); // (I - R) e_i
        let v = w.scale(w.component(i)).add(w.cross(ime));
        *d = Mat3::hat(v).scale(T::one() / theta_sq).mul_mat(r);
    }
    out
}

/// Wraps an axis-angle vector so its magnitude is at most pi while
/// representing the same rotation.
pub fn canonicalize_axis_angle<T: Real>(w: Vec3<T>) -> Vec3<T> {
    let theta = w.norm();
    let pi = T::from_f64_c(std::f64::consts::PI);
    let two_pi = pi + pi;
    if theta <= pi {
        return w;
    }
    let mut reduced = theta % two_pi;
    if reduced > pi {
        reduced -= two_pi;
    }
    w.scale(reduced / theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_rotation_jacobian(w: Vec3<f64>) -> [Mat3<f64>; 3] {
        let h = 1e-6;
        let mut out = [Mat3::zero(); 3];
        for i in 0..3 {
            let mut wp = w;
            let mut wm = w;
            wp.set_component(i, w.component(i) + h);
            wm.set_component(i, w.component(i) - h);
            let rp = rotation(wp);
            let rm = rotation(wm);
            for r in 0..3 {
                for cidx in 0..3 {
                    out[i].m[r][cidx] = (rp.m[r][cidx] - rm.m[r][cidx]) / (2.0 * h);
                }
            }
        }
        out
    }

    #[test]
    fn rotation_is_orthogonal() {
        let w = Vec3::new(0.3, -1.2, 0.7);
        let r = rotation(w);
        let id = r.mul_mat(r.transpose());
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((id.m[i][j] - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rotation_jacobian_matches_finite_differences() {
        for w in [
            Vec3::new(0.3, -1.2, 0.7),
            Vec3::new(1e-6, -2e-6, 5e-7),
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(2.8, 0.1, -0.4),
        ] {
            let analytic = rotation_jacobian(w);
            let fd = fd_rotation_jacobian(w);
            for i in 0..3 {
                for r in 0..3 {
                    for cidx in 0..3 {
                        assert!(
                            (analytic[i].m[r][cidx] - fd[i].m[r][cidx]).abs() < 1e-5,
                            "component {i} ({r},{cidx}): {} vs {}",
                            analytic[i].m[r][cidx],
                            fd[i].m[r][cidx]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn canonicalization_preserves_rotation() {
        let w = Vec3::new(2.0, 2.0, 1.5); // magnitude > pi
        let wc = canonicalize_axis_angle(w);
        assert!(wc.norm() <= std::f64::consts::PI + 1e-12);
        let r1 = rotation(w);
        let r2 = rotation(wc);
        for i in 0..3 {
            for j in 0..3 {
                assert!((r1.m[i][j] - r2.m[i][j]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn f32_instantiation_compiles_and_rotates() {
        let w: Vec3<f32> = Vec3::new(0.0, std::f32::consts::FRAC_PI_2, 0.0);
        let r = rotation(w);
        let v = r.mul_vec(Vec3::new(1.0f32, 0.0, 0.0));
        assert!((v.z - -1.0).abs() < 1e-6);
    }
}
