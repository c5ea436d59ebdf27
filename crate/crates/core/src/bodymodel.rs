//! Articulated capsule body: a 17-joint skeleton whose bone lengths and
//! capsule radii are linear in a 10-dimensional shape coefficient vector.
//!
//! Coordinate convention (body frame): pelvis at the origin, +X is the
//! anatomical left, +Y points toward the feet, +Z points away from a
//! camera the body faces under the identity pose. With the pinhole
//! projection used by [`crate::projection`] this renders the body
//! upright and facing the viewer.
//!
//! Shape semantics: coefficient 0 scales every bone length uniformly
//! (overall stature), coefficient 1 scales every capsule radius
//! uniformly (girth) and leaves lengths alone, coefficients 2..9 apply
//! small per-region length/radius tweaks. Body height therefore moves
//! with coefficient 0 and is invariant to coefficient 1.

use serde::{Deserialize, Serialize};

use crate::math::{canonicalize_axis_angle, rotation, Mat3, Vec3};
use crate::scalar::{c, Real};

/// Number of shape coefficients.
pub const SHAPE_DIM: usize = 10;
/// Number of skeleton joints.
pub const JOINT_COUNT: usize = 17;
/// Shape coefficients are clamped to this symmetric box by every optimizer.
pub const BETA_LIMIT: f64 = 5.0;
/// Uniform bone-length scale per unit of coefficient 0.
pub const SCALE_COEFF: f64 = 0.05;
/// Uniform capsule-radius scale per unit of coefficient 1.
pub const GIRTH_COEFF: f64 = 0.15;
/// Lengths and radii never drop below this floor (meters).
pub const MIN_DIMENSION: f64 = 0.01;
/// Rest height of the template body (meters).
pub const TEMPLATE_HEIGHT: f64 = 1.70;

pub mod joint {
    //! Joint indices of the 17-joint skeleton.
    pub const PELVIS: usize = 0;
    pub const SPINE: usize = 1;
    pub const CHEST: usize = 2;
    pub const NECK: usize = 3;
    pub const HEAD_TOP: usize = 4;
    pub const L_HIP: usize = 5;
    pub const L_KNEE: usize = 6;
    pub const L_ANKLE: usize = 7;
    pub const R_HIP: usize = 8;
    pub const R_KNEE: usize = 9;
    pub const R_ANKLE: usize = 10;
    pub const L_SHOULDER: usize = 11;
    pub const L_ELBOW: usize = 12;
    pub const L_WRIST: usize = 13;
    pub const R_SHOULDER: usize = 14;
    pub const R_ELBOW: usize = 15;
    pub const R_WRIST: usize = 16;
}

pub const JOINT_NAMES: [&str; JOINT_COUNT] = [
    "pelvis",
    "spine",
    "chest",
    "neck",
    "head_top",
    "l_hip",
    "l_knee",
    "l_ankle",
    "r_hip",
    "r_knee",
    "r_ankle",
    "l_shoulder",
    "l_elbow",
    "l_wrist",
    "r_shoulder",
    "r_elbow",
    "r_wrist",
];

/// Parent joint per joint; the pelvis is the root.
pub const PARENT: [usize; JOINT_COUNT] = [
    usize::MAX, // pelvis
    joint::PELVIS,
    joint::SPINE,
    joint::CHEST,
    joint::NECK,
    joint::PELVIS,
    joint::L_HIP,
    joint::L_KNEE,
    joint::PELVIS,
    joint::R_HIP,
    joint::R_KNEE,
    joint::CHEST,
    joint::L_SHOULDER,
    joint::L_ELBOW,
    joint::CHEST,
    joint::R_SHOULDER,
    joint::R_ELBOW,
];

/// The 14-joint 2D detection convention, in scene-file order.
pub const DETECTION_NAMES: [&str; 14] = [
    "head_top",
    "neck",
    "r_shoulder",
    "r_elbow",
    "r_wrist",
    "l_shoulder",
    "l_elbow",
    "l_wrist",
    "r_hip",
    "r_knee",
    "r_ankle",
    "l_hip",
    "l_knee",
    "l_ankle",
];

/// Model joint index backing each entry of the 14-joint detection set.
pub const DETECTION_TO_JOINT: [usize; 14] = [
    joint::HEAD_TOP,
    joint::NECK,
    joint::R_SHOULDER,
    joint::R_ELBOW,
    joint::R_WRIST,
    joint::L_SHOULDER,
    joint::L_ELBOW,
    joint::L_WRIST,
    joint::R_HIP,
    joint::R_KNEE,
    joint::R_ANKLE,
    joint::L_HIP,
    joint::L_KNEE,
    joint::L_ANKLE,
];

/// Shape coefficients shared by every view of one person.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShapeParams<T> {
    pub betas: [T; SHAPE_DIM],
}

impl<T: Real> Default for ShapeParams<T> {
    fn default() -> Self {
        Self { betas: [T::zero(); SHAPE_DIM] }
    }
}

impl<T: Real> ShapeParams<T> {
    pub fn new(betas: [T; SHAPE_DIM]) -> Self {
        Self { betas }
    }

    /// Template shape (all coefficients zero).
    pub fn template() -> Self {
        Self::default()
    }

    /// The girth axis: the second shape coefficient.
    pub fn girth(&self) -> T {
        self.betas[1]
    }

    pub fn is_finite(&self) -> bool {
        self.betas.iter().all(|b| b.is_finite())
    }

    /// Clamp every coefficient into the sanity box used by the optimizers.
    pub fn clamped(&self) -> Self {
        let lim = c::<T>(BETA_LIMIT);
        let mut out = *self;
        for b in &mut out.betas {
            *b = b.min(lim).max(-lim);
        }
        out
    }

    /// Euclidean distance to another coefficient vector.
    pub fn distance(&self, other: &Self) -> T {
        self.betas
            .iter()
            .zip(other.betas.iter())
            .map(|(a, b)| (*a - *b) * (*a - *b))
            .sum::<T>()
            .sqrt()
    }
}

/// Per-view pose: a global root orientation plus one axis-angle rotation
/// per joint, all in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoseParams<T> {
    pub root_orient: Vec3<T>,
    pub joint_rots: [Vec3<T>; JOINT_COUNT],
}

impl<T: Real> Default for PoseParams<T> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<T: Real> PoseParams<T> {
    /// Rest pose: identity everywhere.
    pub fn identity() -> Self {
        Self {
            root_orient: Vec3::zero(),
            joint_rots: [Vec3::zero(); JOINT_COUNT],
        }
    }

    pub fn is_finite(&self) -> bool {
        let v = |w: &Vec3<T>| w.x.is_finite() && w.y.is_finite() && w.z.is_finite();
        v(&self.root_orient) && self.joint_rots.iter().all(v)
    }

    /// Wrap every axis-angle so its magnitude is at most pi.
    pub fn canonicalized(&self) -> Self {
        let mut out = *self;
        out.root_orient = canonicalize_axis_angle(out.root_orient);
        for w in &mut out.joint_rots {
            *w = canonicalize_axis_angle(*w);
        }
        out
    }
}

/// One body-part primitive: a cylinder with hemispherical caps.
#[derive(Clone, Copy, Debug)]
pub struct Capsule<T> {
    pub a: Vec3<T>,
    pub b: Vec3<T>,
    pub radius: T,
    /// Child-joint index of the bone this capsule wraps.
    pub bone: usize,
}

/// Posed joints and capsules in the body frame.
#[derive(Clone, Debug)]
pub struct PosedBody<T> {
    pub joints3d: [Vec3<T>; JOINT_COUNT],
    pub capsules: Vec<Capsule<T>>,
}

/// Forward-kinematics frames kept around for gradient propagation.
#[derive(Clone, Debug)]
pub struct FkFrames<T> {
    /// Rotation applied by the root orientation alone.
    pub root_rot: Mat3<T>,
    /// World rotation after joint j's own rotation (applies to j's children).
    pub world_rot: [Mat3<T>; JOINT_COUNT],
    /// Joint positions in the body frame.
    pub pos: [Vec3<T>; JOINT_COUNT],
    /// Scaled parent-frame bone offset used for each joint.
    pub offsets: [Vec3<T>; JOINT_COUNT],
    /// Whether each bone length sat above the clamp floor (gradient gate).
    pub length_active: [bool; JOINT_COUNT],
}

/// Hinge-limit description for a knee or elbow.
#[derive(Clone, Copy, Debug)]
pub struct HingeLimit<T> {
    pub joint: usize,
    /// Flexion axis in the joint's local frame.
    pub axis: Vec3<T>,
    /// Allowed range of the axis-angle component along `axis` (radians).
    pub lo: T,
    pub hi: T,
}

/// The shape-dependent skeleton: template geometry plus the two linear
/// bases mapping shape coefficients to bone-length and radius offsets.
#[derive(Clone, Debug)]
pub struct Skeleton<T> {
    /// Unit bone direction in the parent frame (root entry is zero).
    pub offset_dir: [Vec3<T>; JOINT_COUNT],
    /// Rest bone length per joint, meters (root entry is zero).
    pub bone_template: [T; JOINT_COUNT],
    /// Absolute bone-length offset (meters) per unit shape coefficient.
    pub length_basis: [[T; SHAPE_DIM]; JOINT_COUNT],
    /// Rest capsule radius per bone, indexed by child joint (root zero).
    pub radius_template: [T; JOINT_COUNT],
    /// Absolute radius offset (meters) per unit shape coefficient.
    pub radius_basis: [[T; SHAPE_DIM]; JOINT_COUNT],
    /// Vertical extent above the head-top joint at rest (meters); follows
    /// the head bone's length factor, not the girth axis.
    pub head_cap: T,
    /// Vertical extent below the ankle joints at rest (meters); follows
    /// the shin bone's length factor.
    pub foot_cap: T,
    /// Hinge limits penalized by the pose prior.
    pub hinges: [HingeLimit<T>; 4],
}

impl<T: Real> Default for Skeleton<T> {
    fn default() -> Self {
        Self::template()
    }
}

/// Raw bone table: (child joint, unscaled offset vector in meters).
/// Proportions follow standard anthropometric ratios for a 1.70 m adult.
const BONE_OFFSETS: [(usize, [f64; 3]); JOINT_COUNT - 1] = [
    (joint::SPINE, [0.0, -0.12, 0.0]),
    (joint::CHEST, [0.0, -0.15, 0.0]),
    (joint::NECK, [0.0, -0.18, 0.0]),
    (joint::HEAD_TOP, [0.0, -0.22, 0.0]),
    (joint::L_HIP, [0.09, 0.05, 0.0]),
    (joint::L_KNEE, [0.0, 0.42, 0.0]),
    (joint::L_ANKLE, [0.0, 0.40, 0.0]),
    (joint::R_HIP, [-0.09, 0.05, 0.0]),
    (joint::R_KNEE, [0.0, 0.42, 0.0]),
    (joint::R_ANKLE, [0.0, 0.40, 0.0]),
    (joint::L_SHOULDER, [0.18, -0.14, 0.0]),
    (joint::L_ELBOW, [0.28, 0.0, 0.0]),
    (joint::L_WRIST, [0.25, 0.0, 0.0]),
    (joint::R_SHOULDER, [-0.18, -0.14, 0.0]),
    (joint::R_ELBOW, [-0.28, 0.0, 0.0]),
    (joint::R_WRIST, [-0.25, 0.0, 0.0]),
];

/// Rest capsule radius per bone (child joint, meters).
const BONE_RADII: [(usize, f64); JOINT_COUNT - 1] = [
    (joint::SPINE, 0.11),
    (joint::CHEST, 0.12),
    (joint::NECK, 0.055),
    (joint::HEAD_TOP, 0.10),
    (joint::L_HIP, 0.07),
    (joint::L_KNEE, 0.075),
    (joint::L_ANKLE, 0.06),
    (joint::R_HIP, 0.07),
    (joint::R_KNEE, 0.075),
    (joint::R_ANKLE, 0.06),
    (joint::L_SHOULDER, 0.06),
    (joint::L_ELBOW, 0.045),
    (joint::L_WRIST, 0.035),
    (joint::R_SHOULDER, 0.06),
    (joint::R_ELBOW, 0.045),
    (joint::R_WRIST, 0.035),
];

/// Per-region tweak columns 2..9: (column, relative length coefficient,
/// affected bones) and (column, relative radius coefficient, bones).
const LENGTH_TWEAKS: [(usize, f64, &[usize]); 7] = [
    (2, 0.02, &[joint::SPINE, joint::CHEST, joint::NECK]),
    (3, 0.02, &[joint::L_ELBOW, joint::L_WRIST, joint::R_ELBOW, joint::R_WRIST]),
    (4, 0.02, &[joint::L_KNEE, joint::L_ANKLE, joint::R_KNEE, joint::R_ANKLE]),
    (7, 0.02, &[joint::HEAD_TOP]),
    (8, 0.02, &[joint::L_SHOULDER, joint::R_SHOULDER]),
    (9, 0.02, &[joint::L_HIP, joint::R_HIP]),
    (2, -0.01, &[joint::L_KNEE, joint::R_KNEE]),
];

const RADIUS_TWEAKS: [(usize, f64, &[usize]); 4] = [
    (5, 0.02, &[joint::SPINE, joint::CHEST]),
    (
        6,
        0.02,
        &[
            joint::L_KNEE,
            joint::L_ANKLE,
            joint::R_KNEE,
            joint::R_ANKLE,
            joint::L_ELBOW,
            joint::L_WRIST,
            joint::R_ELBOW,
            joint::R_WRIST,
        ],
    ),
    (7, 0.01, &[joint::HEAD_TOP]),
    (9, 0.01, &[joint::L_KNEE, joint::R_KNEE]),
];

impl<T: Real> Skeleton<T> {
    /// The calibrated template skeleton (rest height exactly 1.70 m).
    pub fn template() -> Self {
        let mut offset_dir = [Vec3::zero(); JOINT_COUNT];
        let mut bone_template = [T::zero(); JOINT_COUNT];
        for (j, off) in BONE_OFFSETS {
            let v = Vec3::new(c::<T>(off[0]), c(off[1]), c(off[2]));
            let len = v.norm();
            offset_dir[j] = v.scale(T::one() / len);
            bone_template[j] = len;
        }

        let mut radius_template = [T::zero(); JOINT_COUNT];
        for (j, r) in BONE_RADII {
            radius_template[j] = c(r);
        }

        let mut length_basis = [[T::zero(); SHAPE_DIM]; JOINT_COUNT];
        let mut radius_basis = [[T::zero(); SHAPE_DIM]; JOINT_COUNT];
        for j in 1..JOINT_COUNT {
            length_basis[j][0] = c::<T>(SCALE_COEFF) * bone_template[j];
            radius_basis[j][1] = c::<T>(GIRTH_COEFF) * radius_template[j];
        }
        for (col, coeff, bones) in LENGTH_TWEAKS {
            for &j in bones {
                length_basis[j][col] = length_basis[j][col] + c::<T>(coeff) * bone_template[j];
            }
        }
        for (col, coeff, bones) in RADIUS_TWEAKS {
            for &j in bones {
                radius_basis[j][col] = radius_basis[j][col] + c::<T>(coeff) * radius_template[j];
            }
        }

        // Flexion axes: knees bend the shin backward (+Z in the local
        // frame given the y-down convention), elbows curl the forearm
        // forward; ranges run from straight (0) to deep flexion.
        let hinges = [
            HingeLimit { joint: joint::L_KNEE, axis: Vec3::new(T::one(), T::zero(), T::zero()), lo: T::zero(), hi: c(2.4) },
            HingeLimit { joint: joint::R_KNEE, axis: Vec3::new(T::one(), T::zero(), T::zero()), lo: T::zero(), hi: c(2.4) },
            HingeLimit { joint: joint::L_ELBOW, axis: Vec3::new(T::zero(), T::one(), T::zero()), lo: T::zero(), hi: c(2.6) },
            HingeLimit { joint: joint::R_ELBOW, axis: Vec3::new(T::zero(), -T::one(), T::zero()), lo: T::zero(), hi: c(2.6) },
        ];

        Self {
            offset_dir,
            bone_template,
            length_basis,
            radius_template,
            radius_basis,
            head_cap: c(0.10),
            foot_cap: c(0.06),
            hinges,
        }
    }

    /// Template body height, meters.
    pub fn template_height(&self) -> T {
        c(TEMPLATE_HEIGHT)
    }

    /// Bone length for a joint under a shape, floored at 1 cm.
    pub fn bone_length(&self, j: usize, shape: &ShapeParams<T>) -> T {
        let (len, _) = self.bone_length_gated(j, shape);
        len
    }

    fn bone_length_gated(&self, j: usize, shape: &ShapeParams<T>) -> (T, bool) {
        let mut len = self.bone_template[j];
        for k in 0..SHAPE_DIM {
            len += self.length_basis[j][k] * shape.betas[k];
        }
        let floor = c::<T>(MIN_DIMENSION);
        if len < floor {
            (floor, false)
        } else {
            (len, true)
        }
    }

    /// Capsule radius for a bone under a shape, floored at 1 cm.
    pub fn capsule_radius(&self, j: usize, shape: &ShapeParams<T>) -> T {
        let (r, _) = self.capsule_radius_gated(j, shape);
        r
    }

    pub(crate) fn capsule_radius_gated(&self, j: usize, shape: &ShapeParams<T>) -> (T, bool) {
        let mut r = self.radius_template[j];
        for k in 0..SHAPE_DIM {
            r += self.radius_basis[j][k] * shape.betas[k];
        }
        let floor = c::<T>(MIN_DIMENSION);
        if r < floor {
            (floor, false)
        } else {
            (r, true)
        }
    }

    /// Forward kinematics with all intermediate frames retained.
    pub fn fk(&self, shape: &ShapeParams<T>, pose: &PoseParams<T>) -> FkFrames<T> {
        let root_rot = rotation(pose.root_orient);
        let mut world_rot = [Mat3::identity(); JOINT_COUNT];
        let mut pos = [Vec3::zero(); JOINT_COUNT];
        let mut offsets = [Vec3::zero(); JOINT_COUNT];
        let mut length_active = [true; JOINT_COUNT];

        for j in 0..JOINT_COUNT {
            let local = rotation(pose.joint_rots[j]);
            if j == joint::PELVIS {
                world_rot[j] = root_rot.mul_mat(local);
                continue;
            }
            let p = PARENT[j];
            let (len, active) = self.bone_length_gated(j, shape);
            length_active[j] = active;
            let offset = self.offset_dir[j].scale(len);
            offsets[j] = offset;
            pos[j] = pos[p].add(world_rot[p].mul_vec(offset));
            world_rot[j] = world_rot[p].mul_mat(local);
        }

        FkFrames { root_rot, world_rot, pos, offsets, length_active }
    }

    /// Posed 3D joints in the body frame. The identity pose returns the
    /// rest skeleton with the pelvis at the origin.
    pub fn joints3d(&self, shape: &ShapeParams<T>, pose: &PoseParams<T>) -> [Vec3<T>; JOINT_COUNT] {
        self.fk(shape, pose).pos
    }

    /// Posed joints plus the capsule set. Radii depend on shape only.
    pub fn pose_body(&self, shape: &ShapeParams<T>, pose: &PoseParams<T>) -> PosedBody<T> {
        let frames = self.fk(shape, pose);
        let mut capsules = Vec::with_capacity(JOINT_COUNT - 1);
        for j in 1..JOINT_COUNT {
            capsules.push(Capsule {
                a: frames.pos[PARENT[j]],
                b: frames.pos[j],
                radius: self.capsule_radius(j, shape),
                bone: j,
            });
        }
        PosedBody { joints3d: frames.pos, capsules }
    }

    /// Rest-pose body height: vertical extent from the crown (head-top
    /// plus head cap) to the sole (ankle minus foot cap). The cap extents
    /// track bone-length factors so height follows the stature axis and
    /// ignores the girth axis.
    pub fn height(&self, shape: &ShapeParams<T>) -> T {
        self.height_with_grad(shape).0
    }

    /// Height and its gradient with respect to the shape coefficients.
    pub fn height_with_grad(&self, shape: &ShapeParams<T>) -> (T, [T; SHAPE_DIM]) {
        let mut grad = [T::zero(); SHAPE_DIM];

        // Vertical chain sums at rest: offsets are parent-frame constants.
        let chain_y = |end: usize, grad: &mut [T; SHAPE_DIM], sign: T| -> T {
            let mut y = T::zero();
            let mut j = end;
            while j != joint::PELVIS {
                let (len, active) = self.bone_length_gated(j, shape);
                let dy = self.offset_dir[j].y;
                y += dy * len;
                if active {
                    for k in 0..SHAPE_DIM {
                        grad[k] += sign * dy * self.length_basis[j][k];
                    }
                }
                j = PARENT[j];
            }
            y
        };

        // +Y points down: ankles have positive y, the head-top negative.
        let mut g_low = [T::zero(); SHAPE_DIM];
        let y_l = chain_y(joint::L_ANKLE, &mut g_low, T::one());
        let mut g_r = [T::zero(); SHAPE_DIM];
        let y_r = chain_y(joint::R_ANKLE, &mut g_r, T::one());
        let (y_low, mut g_low, shin) = if y_r > y_l {
            (y_r, g_r, joint::R_ANKLE)
        } else {
            (y_l, g_low, joint::L_ANKLE)
        };

        let mut g_high = [T::zero(); SHAPE_DIM];
        let y_high = chain_y(joint::HEAD_TOP, &mut g_high, T::one());

        // Cap extents scale with their bone's length factor.
        let cap = |bone: usize, template_cap: T, grad: &mut [T; SHAPE_DIM], sign: T| -> T {
            let (len, active) = self.bone_length_gated(bone, shape);
            let factor = len / self.bone_template[bone];
            if active {
                for k in 0..SHAPE_DIM {
                    grad[k] += sign * template_cap * self.length_basis[bone][k]
                        / self.bone_template[bone];
                }
            }
            template_cap * factor
        };

        let foot = cap(shin, self.foot_cap, &mut g_low, T::one());
        let mut g_caps = [T::zero(); SHAPE_DIM];
        let head = cap(joint::HEAD_TOP, self.head_cap, &mut g_caps, T::one());

        let height = (y_low + foot) - (y_high - head);
        for k in 0..SHAPE_DIM {
            grad[k] = g_low[k] - g_high[k] + g_caps[k];
        }
        (height, grad)
    }

    /// Rest-pose shoulder-to-ankle length: the average of the left and
    /// right 3D chain endpoints' straight-line distances.
    pub fn shoulder_ankle_length(&self, shape: &ShapeParams<T>) -> T {
        let rest = self.joints3d(shape, &PoseParams::identity());
        let l = rest[joint::L_SHOULDER].sub(rest[joint::L_ANKLE]).norm();
        let r = rest[joint::R_SHOULDER].sub(rest[joint::R_ANKLE]).norm();
        (l + r) * c(0.5)
    }

    /// Serializable description of the template constants.
    pub fn to_spec(&self) -> SkeletonSpec {
        SkeletonSpec {
            joint_names: JOINT_NAMES.iter().map(|s| s.to_string()).collect(),
            parent: PARENT
                .iter()
                .map(|&p| if p == usize::MAX { -1 } else { p as i64 })
                .collect(),
            offset_dir: self
                .offset_dir
                .iter()
                .map(|v| [v.x.to_f64_c(), v.y.to_f64_c(), v.z.to_f64_c()])
                .collect(),
            bone_template: self.bone_template.iter().map(|v| v.to_f64_c()).collect(),
            length_basis: self
                .length_basis
                .iter()
                .map(|row| row.iter().map(|v| v.to_f64_c()).collect())
                .collect(),
            radius_template: self.radius_template.iter().map(|v| v.to_f64_c()).collect(),
            radius_basis: self
                .radius_basis
                .iter()
                .map(|row| row.iter().map(|v| v.to_f64_c()).collect())
                .collect(),
            head_cap: self.head_cap.to_f64_c(),
            foot_cap: self.foot_cap.to_f64_c(),
            template_height: TEMPLATE_HEIGHT,
        }
    }
}

/// JSON form of the skeleton constants (`skeleton.json`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SkeletonSpec {
    pub joint_names: Vec<String>,
    pub parent: Vec<i64>,
    pub offset_dir: Vec<[f64; 3]>,
    pub bone_template: Vec<f64>,
    pub length_basis: Vec<Vec<f64>>,
    pub radius_template: Vec<f64>,
    pub radius_basis: Vec<Vec<f64>>,
    pub head_cap: f64,
    pub foot_cap: f64,
    pub template_height: f64,
}
