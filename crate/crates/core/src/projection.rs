//! Pinhole camera model, the focal-length heuristic, similar-triangles
//! depth initialization and depth-candidate generation.
//!
//! The camera sits at the origin looking along +Z with the principal
//! point at the image center; the body frame is placed by a pure
//! translation (the body root orientation stands in for the extrinsic
//! rotation).

use crate::bodymodel::{joint, ShapeParams, Skeleton};
use crate::error::{Error, Result};
use crate::math::{Vec2, Vec3};
use crate::scalar::{c, Real};

/// Points closer than this to the camera plane are rejected (meters).
pub const MIN_DEPTH: f64 = 0.01;
/// Number of depth candidates tried per view.
pub const DEPTH_CANDIDATES: usize = 5;
/// Half-width of the depth-candidate window (meters).
pub const DEPTH_RANGE: f64 = 1.0;
/// Candidates are shifted so the nearest one stays at or above this depth.
pub const MIN_CANDIDATE_DEPTH: f64 = 0.5;

/// Camera translation plus intrinsics. `translation` is the body-frame
/// origin expressed in camera coordinates; Z must stay positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CameraPose<T> {
    pub translation: Vec3<T>,
    pub focal: T,
    pub image_size: (usize, usize),
}

impl<T: Real> CameraPose<T> {
    pub fn new(translation: Vec3<T>, focal: T, image_size: (usize, usize)) -> Self {
        Self { translation, focal, image_size }
    }

    /// Camera with the heuristic focal length for an image size.
    pub fn with_default_focal(translation: Vec3<T>, image_size: (usize, usize)) -> Self {
        Self { translation, focal: default_focal::<T>(image_size), image_size }
    }

    pub fn principal_point(&self) -> Vec2<T> {
        Vec2::new(
            c::<T>(self.image_size.0 as f64) * c(0.5),
            c::<T>(self.image_size.1 as f64) * c(0.5),
        )
    }

    /// Body-frame point expressed in camera coordinates.
    pub fn to_camera(&self, p: Vec3<T>) -> Vec3<T> {
        p.add(self.translation)
    }
}

/// Heuristic focal length: twice the image width, in pixels.
pub fn default_focal<T: Real>(image_size: (usize, usize)) -> T {
    c::<T>(2.0 * image_size.0 as f64)
}

/// Perspective projection of a body-frame point to pixel coordinates.
pub fn project<T: Real>(point: Vec3<T>, camera: &CameraPose<T>) -> Result<Vec2<T>> {
    let p = camera.to_camera(point);
    if p.z <= c(MIN_DEPTH) {
        return Err(Error::BehindCamera { z: p.z.to_f64_c() });
    }
    let pp = camera.principal_point();
    Ok(Vec2::new(
        camera.focal * p.x / p.z + pp.x,
        camera.focal * p.y / p.z + pp.y,
    ))
}

/// Detection indices (into the 14-joint convention) used by the depth
/// initializer: both shoulders and both ankles.
pub const DEPTH_INIT_SHOULDERS: [usize; 2] = [2, 5];
pub const DEPTH_INIT_ANKLES: [usize; 2] = [10, 13];

/// Similar-triangles depth estimate: focal times the ratio of the rest
/// 3D shoulder-to-ankle length to its detected 2D pixel length.
pub fn init_depth<T: Real>(
    skeleton: &Skeleton<T>,
    shape: &ShapeParams<T>,
    joints2d: &[Vec2<T>; 14],
    confidences: &[T; 14],
    focal: T,
) -> Result<T> {
    for &idx in DEPTH_INIT_SHOULDERS.iter().chain(DEPTH_INIT_ANKLES.iter()) {
        if confidences[idx] <= T::zero() {
            return Err(Error::MissingJoints(format!(
                "depth init needs shoulders and ankles; detection {idx} has no confidence"
            )));
        }
    }
    let mid = |a: usize, b: usize| joints2d[a].add(joints2d[b]).scale(c(0.5));
    let shoulders = mid(DEPTH_INIT_SHOULDERS[0], DEPTH_INIT_SHOULDERS[1]);
    let ankles = mid(DEPTH_INIT_ANKLES[0], DEPTH_INIT_ANKLES[1]);
    let l2d = shoulders.sub(ankles).norm();
    if l2d < T::one() {
        return Err(Error::MissingJoints(format!(
            "shoulder-to-ankle pixel distance degenerate ({} px)",
            l2d.to_f64_c()
        )));
    }
    let l3d = skeleton.shoulder_ankle_length(shape);
    Ok(focal * l3d / l2d)
}

/// Five depths evenly covering [z0 - 1, z0 + 1] meters, shifted up when
/// the window would put a candidate closer than half a meter.
pub fn depth_candidates<T: Real>(z0: T) -> [T; DEPTH_CANDIDATES] {
    let range = c::<T>(DEPTH_RANGE);
    let min_ok = c::<T>(MIN_CANDIDATE_DEPTH);
    let start = if z0 - range < min_ok { min_ok } else { z0 - range };
    let step = (range + range) / c::<T>((DEPTH_CANDIDATES - 1) as f64);
    let mut out = [T::zero(); DEPTH_CANDIDATES];
    for (i, v) in out.iter_mut().enumerate() {
        *v = start + step * c::<T>(i as f64);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodymodel::PoseParams;

    #[test]
    fn focal_is_twice_the_width() {
        assert_eq!(default_focal::<f64>((640, 480)), 1280.0);
        assert_eq!(default_focal::<f64>((1, 77)), 2.0);
        assert_eq!(default_focal::<f64>((512, 1024)), 1024.0);
    }

    #[test]
    fn optical_axis_maps_to_principal_point() {
        let cam = CameraPose::new(Vec3::zero(), 800.0, (640, 480));
        let uv = project(Vec3::new(0.0, 0.0, 2.0), &cam).unwrap();
        assert_eq!((uv.x, uv.y), (320.0, 240.0));
        let uv = project(Vec3::new(0.5, 0.0, 2.0), &cam).unwrap();
        assert_eq!((uv.x, uv.y), (520.0, 240.0));
    }

    #[test]
    fn behind_camera_is_rejected() {
        let cam = CameraPose::new(Vec3::zero(), 800.0, (640, 480));
        assert!(matches!(
            project(Vec3::new(0.0, 0.0, -1.0), &cam),
            Err(Error::BehindCamera { .. })
        ));
    }

    #[test]
    fn similar_triangles_formula() {
        // synthetic detections with a known pixel length
        let skeleton = Skeleton::<f64>::template();
        let shape = ShapeParams::template();
        let l3d = skeleton.shoulder_ankle_length(&shape);

        let mut joints = [Vec2::zero(); 14];
        let conf = [1.0; 14];
        // shoulders 300 px above ankles
        joints[DEPTH_INIT_SHOULDERS[0]] = Vec2::new(310.0, 100.0);
        joints[DEPTH_INIT_SHOULDERS[1]] = Vec2::new(330.0, 100.0);
        joints[DEPTH_INIT_ANKLES[0]] = Vec2::new(315.0, 400.0);
        joints[DEPTH_INIT_ANKLES[1]] = Vec2::new(325.0, 400.0);

        let z0 = init_depth(&skeleton, &shape, &joints, &conf, 1000.0).unwrap();
        assert!((z0 - 1000.0 * l3d / 300.0).abs() < 1e-12);
    }

    /// Oracle: the rest chain length from the posed joints.
    #[test]
    fn shoulder_ankle_length_matches_chain_sums() {
        let skeleton = Skeleton::<f64>::template();
        let shape = ShapeParams::template();
        let rest = skeleton.joints3d(&shape, &PoseParams::identity());
        let l = rest[joint::L_SHOULDER].sub(rest[joint::L_ANKLE]).norm();
        let r = rest[joint::R_SHOULDER].sub(rest[joint::R_ANKLE]).norm();
        let expect = 0.5 * (l + r);
        assert!((skeleton.shoulder_ankle_length(&shape) - expect).abs() < 1e-15);
        // template numbers: shoulder (0.18, -0.41), ankle (0.09, 0.87)
        let hand = (0.09f64.powi(2) + 1.28f64.powi(2)).sqrt();
        assert!((expect - hand).abs() < 1e-12);
    }

    #[test]
    fn zero_pixel_distance_is_missing_joints() {
        let skeleton = Skeleton::<f64>::template();
        let shape = ShapeParams::template();
        let joints = [Vec2::new(5.0, 5.0); 14];
        let conf = [1.0; 14];
        assert!(matches!(
            init_depth(&skeleton, &shape, &joints, &conf, 1000.0),
            Err(Error::MissingJoints(_))
        ));
    }

    #[test]
    fn candidate_window() {
        assert_eq!(depth_candidates(4.0), [3.0, 3.5, 4.0, 4.5, 5.0]);
        // near camera: shifted so the closest candidate stays at 0.5 m
        assert_eq!(depth_candidates(1.2), [0.5, 1.0, 1.5, 2.0, 2.5]);
        assert_eq!(depth_candidates(0.3).len(), DEPTH_CANDIDATES);
    }

    /// The similarity ambiguity the height term breaks: scaling a point
    /// and the camera translation together leaves the projection fixed.
    #[test]
    fn scale_ambiguity() {
        let cam = CameraPose::new(Vec3::new(0.2, -0.1, 3.0), 1280.0, (640, 480));
        let p = Vec3::new(0.4, -0.9, 0.2);
        let base = project(p, &cam).unwrap();
        for alpha in [0.5, 2.0, 7.5] {
            let scaled_cam = CameraPose::new(cam.translation.scale(alpha), cam.focal, cam.image_size);
            let uv = project(p.scale(alpha), &scaled_cam).unwrap();
            assert!((uv.x - base.x).abs() < 1e-9);
            assert!((uv.y - base.y).abs() < 1e-9);
        }
    }

    /// Unprojecting along the pixel ray recovers the point up to depth.
    #[test]
    fn ray_membership() {
        let cam = CameraPose::new(Vec3::new(0.3, 0.2, 4.0), 1000.0, (640, 480));
        let p = Vec3::new(0.25, -0.55, 0.4);
        let uv = project(p, &cam).unwrap();
        let pp = cam.principal_point();
        let cam_pt = cam.to_camera(p);
        // direction of the ray through the pixel
        let dir = Vec3::new((uv.x - pp.x) / cam.focal, (uv.y - pp.y) / cam.focal, 1.0);
        let recovered = dir.scale(cam_pt.z);
        assert!(recovered.sub(cam_pt).norm() < 1e-9);
    }
}
