//! The H(5,4) ovoid-nonexistence certificate.
//!
//! A frozen data block pins down eight singular points of H(5,4).  Their
//! setwise stabilizer inside the full semilinear collineation group, cut down
//! to linear form-preserving maps, is a group of order 144 with 34 point
//! orbits; frozen integer weights on those orbits form a weighted 36-tight
//! set.  The pipeline rebuilds all of this from the eight vectors alone and
//! checks every number against the frozen tables.
//!
//! The group fixes one point (label 34) and stabilizes one nondegenerate
//! line (label 30, three singular points); together they span a cone plane
//! with 13 singular points whose nine remaining points split into three
//! orbits (labels 14, 31, 33) — the extra points of three 7-point
//! GF(2)-subgeometries of the plane.  Exactly three invariant 63-point
//! 3-tight sets exist (an exhaustive sweep over orbit unions proves it), and
//! they are exactly the symplectic GF(2)-subgeometry extensions of the three
//! plane subgeometries; the one through the label-14 orbit covers labels
//! {14, 18, 22, 24, 28, 29, 30, 32, 34}.
//!
//! Assume a hypothetical ovoid meets the plane exactly in the three label-14
//! points.  Perp-coverage then empties twenty orbits, leaving fourteen
//! admissible labels.  Every invariant tight vector — the space is
//! 16-dimensional, computed as a kernel over the collapsed adjacency matrix
//! — yields one linear equation on the per-orbit intersection counts.  The
//! resulting system has rank 11 on the 13 free admissible counts, and the
//! box constraints 0 ≤ x ≤ |orbit| squeeze the remaining freedom to a single
//! rational point: labels 16, 18, 25, 32 are forced empty and the label-15
//! count is forced to 3/2.  Since only label 15 carries a nonzero weight
//! among the surviving labels, the weighted-tight identity collapses to
//! 24·x₁₅ = 36 over a nonnegative integer x₁₅ — which is impossible.

use std::sync::Arc;

use num::{BigInt, BigRational, ToPrimitive};

use crate::bitset::BitSet;
use crate::embed::{classify_plane, plane_through, PlaneKind};
use crate::error::{Error, Result};
use crate::field::{El, Field};
use crate::geometry::{ProjPoint, Subspace};
use crate::group::{setwise_stabilizer, GroupHandle, OrbitPartition, StabilizerOptions};
use crate::intriguing::{classify, Classification, WeightVector};
use crate::linalg::{vec_add, vec_scale};
use crate::polar::{PolarFamily, PolarSpace};
use crate::ratmat::RatMat;
use crate::srg;

/// Number of group orbits on the 693 points.
pub const ORBIT_COUNT: usize = 34;
/// Order of the certificate group.
pub const GROUP_ORDER: usize = 144;
/// The tight-set parameter of the frozen weight vector.
pub const TIGHT_PARAMETER: i64 = 36;
/// Weighted size jψ^⊤ = 36·21 of the frozen weight vector.
pub const WEIGHT_TOTAL: i64 = 756;
/// Label of the stabilized nondegenerate line's orbit.
pub const LINE_LABEL: usize = 30;
/// Label of the fixed point's orbit.
pub const CONE_POINT_LABEL: usize = 34;
/// Label of the orbit assumed to consist of ovoid points.
pub const ASSUMED_LABEL: usize = 14;
/// Label of the single surviving variable of the final equation.
pub const EQUATION_LABEL: usize = 15;
/// Its coefficient — the frozen weight of label 15.
pub const EQUATION_COEFFICIENT: i64 = 24;

/// Digit code for GF(4) literals: 0, 1 mean the field constants; 2 means the
/// stored multiplicative generator g; 3 means g².
type Digits = [u8; 6];

/// The eight anchor vectors whose setwise stabilizer defines the group.
const ANCHORS: [Digits; 8] = [
    [0, 1, 1, 0, 2, 2],
    [1, 3, 1, 0, 0, 2],
    [1, 0, 0, 1, 3, 2],
    [0, 0, 1, 2, 2, 3],
    [1, 3, 1, 0, 0, 1],
    [1, 3, 3, 2, 2, 1],
    [1, 1, 0, 1, 0, 1],
    [1, 1, 2, 2, 1, 3],
];

/// Frozen orbit representatives; entry k−1 is the representative of the
/// orbit labeled k.
const ORBIT_REPS: [Digits; ORBIT_COUNT] = [
    [1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1],
    [0, 0, 0, 0, 1, 2],
    [0, 0, 0, 0, 1, 3],
    [0, 0, 0, 1, 0, 1],
    [0, 0, 0, 1, 0, 3],
    [0, 0, 0, 1, 1, 0],
    [0, 0, 0, 1, 2, 0],
    [0, 0, 0, 1, 3, 0],
    [0, 0, 1, 0, 0, 1],
    [0, 0, 1, 0, 0, 3],
    [0, 0, 1, 0, 3, 0],
    [0, 0, 1, 1, 1, 1],
    [0, 0, 1, 1, 1, 2],
    [0, 0, 1, 1, 1, 3],
    [0, 0, 1, 2, 2, 1],
    [0, 0, 1, 2, 2, 2],
    [0, 0, 1, 2, 2, 3],
    [0, 0, 1, 2, 3, 1],
    [0, 0, 1, 2, 3, 2],
    [0, 0, 1, 3, 0, 0],
    [0, 0, 1, 3, 3, 1],
    [0, 0, 1, 3, 3, 2],
    [0, 1, 0, 1, 2, 1],
    [0, 1, 0, 2, 0, 0],
    [0, 1, 0, 2, 2, 1],
    [0, 1, 0, 2, 2, 3],
    [0, 1, 0, 3, 1, 3],
    [0, 1, 2, 1, 3, 0],
    [0, 1, 2, 2, 1, 0],
    [1, 0, 0, 1, 3, 2],
    [1, 0, 2, 0, 1, 3],
    [1, 0, 3, 2, 0, 3],
    [1, 3, 1, 0, 0, 2],
];

/// Frozen orbit weights in label order; they define the 36-tight set.
const ORBIT_WEIGHTS: [i64; ORBIT_COUNT] = [
    5, 0, -2, 0, -7, 3, 16, 0, 2, 0, 10, 0, 0, 0, 24, 12, 0, 36, 0, 0, -9, 6,
    -6, -6, 0, 0, 2, -8, 6, 24, -12, 0, 0, 0,
];

/// Orbit labels not ruled out by the perps of the assumed point triple.
const ADMISSIBLE_LABELS: [usize; 14] = [2, 4, 8, 10, 12, 13, 14, 15, 16, 18, 19, 25, 26, 32];

/// Admissible labels whose counts the relaxed system forces to zero.
const FORCED_EMPTY_LABELS: [usize; 4] = [16, 18, 25, 32];

/// Labels of the three orbits forming the nine extra plane points.
const PLANE_REMAINDER_LABELS: [usize; 3] = [14, 31, 33];

/// Orbit labels of the three invariant 63-point 3-tight sets, in
/// lexicographic order.  Each is the symplectic GF(2)-subgeometry extension
/// of one plane subgeometry (extras label 33, 31, 14 respectively), and the
/// exhaustive orbit-union sweep proves there are no others.
const TIGHT63_LABEL_SETS: [[usize; 9]; 3] = [
    [7, 15, 18, 26, 29, 30, 32, 33, 34],
    [9, 13, 18, 19, 29, 30, 31, 32, 34],
    [14, 18, 22, 24, 28, 29, 30, 32, 34],
];

/// Orbit labels of the invariant symplectic subgeometry through the assumed
/// orbit — the last entry of [`TIGHT63_LABEL_SETS`].
const W5_LABELS: [usize; 9] = [14, 18, 22, 24, 28, 29, 30, 32, 34];

/// Dimension of the space of orbit-constant tight vectors (the all-ones
/// vector plus a 15-dimensional invariant eigenspace slice).
const TIGHT_SPACE_DIM: usize = 16;

/// Rank of the tight system on the 13 admissible non-assumed counts.
const SYSTEM_RANK: usize = 11;

/// The two labels left free by the reduced system; box constraints then pin
/// both (label 32 to 0, label 26 to 3/2).
const FREE_LABELS: [usize; 2] = [26, 32];

fn stage_err(
    stage: &str,
    expected: impl std::fmt::Display,
    actual: impl std::fmt::Display,
) -> Error {
    Error::CertifyMismatch {
        stage: stage.into(),
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

/// Decodes a digit-coded GF(4) vector into a normalized projective point.
fn decode(f: &Field, digits: &Digits) -> ProjPoint {
    let g = f.generator();
    let g2 = f.mul(g, g);
    let v: Vec<El> = digits
        .iter()
        .map(|&d| match d {
            0 => El::ZERO,
            1 => El::ONE,
            2 => g,
            _ => g2,
        })
        .collect();
    ProjPoint::normalize(f, &v).expect("frozen vectors are nonzero")
}

/// One of the three 7-point GF(2)-subgeometries of the cone plane: the cone
/// point, the three line points, and one extra point on each cone line.
#[derive(Debug, Clone)]
pub struct PlaneSubgeometry {
    /// All seven point indices, sorted.
    pub points: Vec<usize>,
    /// The three extra points (one per cone line).
    pub extras: [usize; 3],
    /// The common orbit label of the extras.
    pub label: usize,
    /// Vectors generating it as a GF(2)-span: the cone-point vector and two
    /// scaled line vectors.
    pub basis: [Vec<El>; 3],
}

/// The rebuilt certificate configuration: the space, the group, the aligned
/// orbit partition, the tight weight vector, and the distinguished
/// subgeometries the final argument runs through.
pub struct H54Config {
    pub space: Arc<PolarSpace>,
    /// Indices of the eight anchor points.
    pub anchors: Vec<usize>,
    /// Full semilinear setwise stabilizer of the anchor set.
    pub full_stabilizer: GroupHandle,
    /// Its linear form-preserving subgroup — the certificate group (order 144).
    pub group: GroupHandle,
    pub orbits: OrbitPartition,
    /// Internal orbit id of label k at entry k−1.
    pub orbit_of_label: Vec<usize>,
    /// Label (1-based) of each internal orbit id.
    pub label_of_orbit: Vec<usize>,
    /// The frozen orbit weights expanded to a point vector (weighted 36-tight).
    pub weights: WeightVector,
    /// The group's unique fixed point (label 34).
    pub cone_point: usize,
    /// The three singular points of the stabilized nondegenerate line
    /// (label 30), in increasing index order.
    pub line: [usize; 3],
    /// The cone plane spanned by the cone point and the line.
    pub plane: Subspace,
    /// Its 13 singular points.
    pub plane_singular: BitSet,
    /// The three 7-point GF(2)-subgeometries of the cone plane.
    pub plane_subgeometries: Vec<PlaneSubgeometry>,
    /// Collapsed adjacency in label order: entry [k][l] counts the neighbors
    /// in the orbit labeled l+1 of any point of the orbit labeled k+1
    /// (verified constant across each orbit).
    pub quotient: Vec<Vec<i64>>,
    /// The positive non-valency eigenvalue of the collinearity graph.
    pub theta_plus: i64,
    /// Orbit label sets of all group-invariant 63-point 3-tight sets,
    /// lexicographically sorted (exactly three exist).
    pub tight63_label_sets: Vec<Vec<usize>>,
    /// The invariant 63-point symplectic GF(2)-subgeometry extending the
    /// label-14 plane subgeometry — the unique tight set through that orbit.
    pub symplectic63: BitSet,
    /// The orbit labels whose orbits compose it.
    pub symplectic63_labels: Vec<usize>,
}

/// The audited certificate: every field is a recomputed quantity that was
/// checked against the frozen tables during the pipeline.
#[derive(Debug, Clone, serde::Serialize)]
pub struct H54Report {
    pub space: String,
    pub anchor_points: Vec<String>,
    pub full_stabilizer_order: usize,
    pub group_order: usize,
    pub orbit_count: usize,
    /// Orbit sizes in label order.
    pub orbit_sizes: Vec<usize>,
    /// Orbit representatives in label order (coordinate labels).
    pub orbit_representatives: Vec<String>,
    /// The frozen weights in label order.
    pub orbit_weights: Vec<i64>,
    pub tight_parameter: String,
    pub weight_total: String,
    pub line_label: usize,
    pub line_points: Vec<String>,
    pub cone_point_label: usize,
    pub cone_point: String,
    pub plane_singular_count: usize,
    pub plane_remainder_labels: Vec<usize>,
    /// Orbit labels of the three plane subgeometries' extra points.
    pub plane_subgeometry_labels: Vec<usize>,
    /// Orbit label sets of the three invariant 63-point 3-tight sets.
    pub invariant_tight_set_labels: Vec<Vec<usize>>,
    /// Orbit labels composing the 63-point symplectic subgeometry through
    /// the assumed orbit.
    pub symplectic_subgeometry_labels: Vec<usize>,
    /// Its admissible labels other than the assumed one — the counts its
    /// tight equation forces to zero.
    pub subgeometry_admissible_labels: Vec<usize>,
    /// The assumed ovoid points: the label-14 plane triple.
    pub assumed_triple: Vec<String>,
    /// Labels emptied because every point is collinear with an assumed point.
    pub eliminated_labels: Vec<usize>,
    /// The complement: labels the perp sweep leaves possible.
    pub admissible_labels: Vec<usize>,
    /// Dimension of the orbit-constant tight vector space.
    pub tight_space_dimension: usize,
    /// Rank of the tight system on the admissible non-assumed counts.
    pub system_rank: usize,
    /// Labels left free by the reduced system (pinned by box constraints).
    pub system_free_labels: Vec<usize>,
    /// The unique relaxed solution: each admissible label with its forced
    /// rational count.
    pub relaxed_values: Vec<(usize, String)>,
    /// Admissible labels forced to zero by the relaxed system.
    pub forced_empty_labels: Vec<usize>,
    /// Labels still allowed to meet the hypothetical ovoid.
    pub surviving_labels: Vec<usize>,
    pub equation_coefficient: i64,
    pub equation_variable_label: usize,
    pub equation_rhs: String,
    /// Value forced on the variable when integrality is dropped.
    pub relaxed_solution: String,
    pub integer_feasible: bool,
}

impl H54Config {
    /// Rebuilds the full configuration from the eight anchor vectors,
    /// checking each stage against the frozen tables.
    pub fn build() -> Result<H54Config> {
        let space = PolarSpace::standard(PolarFamily::H, 6, 2)?;
        let f = space.field().clone();

        // Stage 1: anchor points must be singular.
        let mut anchors = Vec::with_capacity(ANCHORS.len());
        for digits in &ANCHORS {
            let p = decode(&f, digits);
            let idx = space.point_index(&p).ok_or_else(|| {
                stage_err(
                    "anchor singularity",
                    "eight singular anchor vectors",
                    format!("({}) is off the variety", p.label(&f)),
                )
            })?;
            anchors.push(idx);
        }

        // Stage 2: the group.
        let cell: Vec<ProjPoint> = anchors.iter().map(|&i| space.point(i).clone()).collect();
        let full_stabilizer = setwise_stabilizer(&f, 6, &[cell], StabilizerOptions::default())?;
        let group = full_stabilizer.form_preserving_subgroup(space.form())?;
        if group.order() != GROUP_ORDER {
            return Err(stage_err("group order", GROUP_ORDER, group.order()));
        }

        // Stage 3: orbits, aligned to the frozen representatives.
        let orbits = group.orbits(&space)?;
        if orbits.count() != ORBIT_COUNT {
            return Err(stage_err("orbit count", ORBIT_COUNT, orbits.count()));
        }
        let reps: Vec<ProjPoint> = ORBIT_REPS.iter().map(|d| decode(&f, d)).collect();
        let orbit_of_label = orbits.align(&space, &reps)?;
        let mut label_of_orbit = vec![0usize; ORBIT_COUNT];
        for (k, &o) in orbit_of_label.iter().enumerate() {
            label_of_orbit[o] = k + 1;
        }

        // Stage 4: the weight vector classifies as weighted 36-tight.
        let w: Vec<BigRational> = (0..space.n())
            .map(|i| {
                let label = label_of_orbit[orbits.orbit_index_of(i)];
                BigRational::from_integer(BigInt::from(ORBIT_WEIGHTS[label - 1]))
            })
            .collect();
        let weights = WeightVector::from_weights(space.clone(), w)?;
        let tight = BigRational::from_integer(BigInt::from(TIGHT_PARAMETER));
        match classify(&weights)? {
            Classification::WeightedTight { ref i } if *i == tight => {}
            other => {
                return Err(stage_err(
                    "tight classification",
                    format!("weighted {TIGHT_PARAMETER}-tight"),
                    format!("{other:?}"),
                ))
            }
        }
        let total = weights.total();
        if total != BigRational::from_integer(BigInt::from(WEIGHT_TOTAL)) {
            return Err(stage_err("weight total", WEIGHT_TOTAL, total));
        }

        // Stage 5: the fixed point and the stabilized line.
        let fixed_orbit = orbits.orbit(orbit_of_label[CONE_POINT_LABEL - 1]);
        if fixed_orbit.len() != 1 {
            return Err(stage_err("fixed-point orbit size", 1, fixed_orbit.len()));
        }
        let cone_point = fixed_orbit[0];
        let mut line_orbit = orbits.orbit(orbit_of_label[LINE_LABEL - 1]).to_vec();
        line_orbit.sort_unstable();
        if line_orbit.len() != 3 {
            return Err(stage_err("line orbit size", 3, line_orbit.len()));
        }
        let line = [line_orbit[0], line_orbit[1], line_orbit[2]];
        for a in 0..3 {
            if !space.adjacent(cone_point, line[a]) {
                return Err(stage_err(
                    "line inside the fixed point's perp",
                    "three collinear-with-fixed-point line points",
                    format!("point {} is not", line[a]),
                ));
            }
            for b in a + 1..3 {
                if space.adjacent(line[a], line[b]) {
                    return Err(stage_err(
                        "line nondegeneracy",
                        "pairwise non-collinear line points",
                        format!("points {} and {} are collinear", line[a], line[b]),
                    ));
                }
            }
        }

        // Stage 6: the cone plane and its nine extra points.
        let plane = plane_through(&space, cone_point, line[0], line[1]);
        let section = classify_plane(&space, &plane)?;
        if section.kind != PlaneKind::Cone {
            return Err(stage_err("plane kind", "cone", format!("{:?}", section.kind)));
        }
        if section.vertex != Some(cone_point) {
            return Err(stage_err(
                "cone vertex",
                format!("the fixed point {cone_point}"),
                format!("{:?}", section.vertex),
            ));
        }
        let plane_singular = section.singular.clone();
        if plane_singular.count() != 13 {
            return Err(stage_err("plane singular count", 13, plane_singular.count()));
        }
        if !plane_singular.contains(line[2]) {
            return Err(stage_err(
                "line in plane",
                "third line point inside the plane",
                "absent",
            ));
        }
        let remainder: Vec<usize> = plane_singular
            .iter()
            .filter(|&i| i != cone_point && !line.contains(&i))
            .collect();
        if remainder.len() != 9 {
            return Err(stage_err("plane remainder size", 9, remainder.len()));
        }
        let mut remainder_labels: Vec<usize> = remainder
            .iter()
            .map(|&i| label_of_orbit[orbits.orbit_index_of(i)])
            .collect();
        remainder_labels.sort_unstable();
        remainder_labels.dedup();
        if remainder_labels != PLANE_REMAINDER_LABELS {
            return Err(stage_err(
                "plane remainder labels",
                format!("{PLANE_REMAINDER_LABELS:?}"),
                format!("{remainder_labels:?}"),
            ));
        }

        // Stage 7: the three 7-point GF(2)-subgeometries of the plane.
        let units: Vec<El> = f.elements().filter(|e| !e.is_zero()).collect();
        let pvec = space.point(cone_point).coords().to_vec();
        let r0 = space.point(line[0]).coords().to_vec();
        let r1 = space.point(line[1]).coords().to_vec();
        let mut plane_subgeometries: Vec<PlaneSubgeometry> = Vec::new();
        for &mu in &units {
            let s0 = vec_scale(&f, mu, &r0);
            for &lam in &units {
                let s1 = vec_scale(&f, lam, &r1);
                let third = vec_add(&f, &s0, &s1);
                if space.index_of_vector(&third) != Some(line[2]) {
                    continue;
                }
                let sums = [
                    vec_add(&f, &pvec, &s0),
                    vec_add(&f, &pvec, &s1),
                    vec_add(&f, &pvec, &third),
                ];
                let mut extras = [0usize; 3];
                for (slot, s) in sums.iter().enumerate() {
                    extras[slot] = space.index_of_vector(s).ok_or_else(|| {
                        stage_err(
                            "subgeometry closure",
                            "three singular extra points",
                            "a non-singular GF(2)-combination",
                        )
                    })?;
                }
                let labels: Vec<usize> = extras
                    .iter()
                    .map(|&i| label_of_orbit[orbits.orbit_index_of(i)])
                    .collect();
                if labels[1] != labels[0] || labels[2] != labels[0] {
                    return Err(stage_err(
                        "subgeometry orbit",
                        "one orbit label across the three extra points",
                        format!("{labels:?}"),
                    ));
                }
                if extras.iter().any(|e| !remainder.contains(e)) {
                    return Err(stage_err(
                        "subgeometry location",
                        "extra points among the nine plane remainder points",
                        format!("{extras:?}"),
                    ));
                }
                let mut points = vec![
                    cone_point, line[0], line[1], line[2], extras[0], extras[1], extras[2],
                ];
                points.sort_unstable();
                points.dedup();
                if points.len() != 7 {
                    return Err(stage_err("subgeometry size", 7, points.len()));
                }
                for &x in &points {
                    let orb = orbits.orbit(orbits.orbit_index_of(x));
                    if !orb.iter().all(|y| points.binary_search(y).is_ok()) {
                        return Err(stage_err(
                            "subgeometry invariance",
                            "a union of group orbits",
                            format!("orbit of point {x} leaves the subgeometry"),
                        ));
                    }
                }
                plane_subgeometries.push(PlaneSubgeometry {
                    points,
                    extras,
                    label: labels[0],
                    basis: [pvec.clone(), s0.clone(), s1],
                });
            }
        }
        if plane_subgeometries.len() != 3 {
            return Err(stage_err(
                "subgeometry count",
                3,
                plane_subgeometries.len(),
            ));
        }
        let mut sub_labels: Vec<usize> =
            plane_subgeometries.iter().map(|s| s.label).collect();
        sub_labels.sort_unstable();
        if sub_labels != PLANE_REMAINDER_LABELS {
            return Err(stage_err(
                "subgeometry labels",
                format!("{PLANE_REMAINDER_LABELS:?}"),
                format!("{sub_labels:?}"),
            ));
        }

        // Stage 8: the invariant 63-point 3-tight sets, found twice.  Route
        // (a): an exhaustive subset-sum over orbit sizes keeps every
        // 63-point orbit union whose characteristic vector is tight against
        // the collapsed adjacency matrix.  Route (b): each plane subgeometry
        // grows to its GF(2)-closed 63-point symplectic extensions.  The two
        // enumerations must produce identical point sets — tying the
        // combinatorial tight sets to genuine symplectic subgeometries.
        let quotient = collapsed_adjacency(&space, &orbits, &orbit_of_label, &label_of_orbit)?;
        let params = srg::params_of_space(&space)?;
        let theta_plus = params.theta_plus.to_i64().ok_or_else(|| {
            Error::Construction("eigenvalue exceeds machine integers".into())
        })?;
        let sizes_by_label: Vec<usize> = (1..=ORBIT_COUNT)
            .map(|k| orbits.orbit(orbit_of_label[k - 1]).len())
            .collect();
        let tight63_label_sets = tight_unions_63(&sizes_by_label, &quotient, theta_plus);
        if tight63_label_sets != TIGHT63_LABEL_SETS {
            return Err(stage_err(
                "tight-set survey",
                format!("{TIGHT63_LABEL_SETS:?}"),
                format!("{tight63_label_sets:?}"),
            ));
        }
        let mut grown: Vec<Vec<usize>> = Vec::new();
        for sub in &plane_subgeometries {
            grown.extend(grow_symplectic(&space, &orbits, &sub.basis)?);
        }
        grown.sort();
        grown.dedup();
        let expand = |labels: &[usize]| -> Vec<usize> {
            let mut pts: Vec<usize> = labels
                .iter()
                .flat_map(|&k| orbits.orbit(orbit_of_label[k - 1]).iter().copied())
                .collect();
            pts.sort_unstable();
            pts
        };
        let mut tight_points: Vec<Vec<usize>> =
            tight63_label_sets.iter().map(|ls| expand(ls)).collect();
        tight_points.sort();
        if grown != tight_points {
            return Err(stage_err(
                "subgeometry agreement",
                "identical point sets from the tight-union sweep and the GF(2) grower",
                format!("{} grown vs {} tight", grown.len(), tight_points.len()),
            ));
        }
        // The subgeometry the argument leans on: the unique tight set
        // through the assumed orbit.
        let through_assumed: Vec<Vec<usize>> = tight63_label_sets
            .iter()
            .filter(|ls| ls.contains(&ASSUMED_LABEL))
            .cloned()
            .collect();
        if through_assumed.len() != 1 || through_assumed[0] != W5_LABELS {
            return Err(stage_err(
                "subgeometry through the assumed orbit",
                format!("exactly one, with labels {W5_LABELS:?}"),
                format!("{through_assumed:?}"),
            ));
        }
        let symplectic63 = BitSet::from_indices(space.n(), expand(&W5_LABELS).into_iter());
        let symplectic63_labels = W5_LABELS.to_vec();

        Ok(H54Config {
            space,
            anchors,
            full_stabilizer,
            group,
            orbits,
            orbit_of_label,
            label_of_orbit,
            weights,
            cone_point,
            line,
            plane,
            plane_singular,
            plane_subgeometries,
            quotient,
            theta_plus,
            tight63_label_sets,
            symplectic63,
            symplectic63_labels,
        })
    }

    /// Orbit label of a point.
    pub fn label_of_point(&self, i: usize) -> usize {
        self.label_of_orbit[self.orbits.orbit_index_of(i)]
    }

    /// Sorted points of the orbit with the given label.
    pub fn orbit_points(&self, label: usize) -> Vec<usize> {
        let mut v = self.orbits.orbit(self.orbit_of_label[label - 1]).to_vec();
        v.sort_unstable();
        v
    }

    /// Runs the elimination argument and emits the audited report.
    pub fn report(&self) -> Result<H54Report> {
        let space = &self.space;
        let f = space.field();

        // The assumed triple: label-14 points, which must be exactly the
        // extras of the label-14 plane subgeometry.
        let o14 = self.orbit_points(ASSUMED_LABEL);
        for &x in &o14 {
            if !self.plane_singular.contains(x) {
                return Err(stage_err(
                    "assumed orbit location",
                    "assumed orbit inside the cone plane",
                    format!("point {x} is outside"),
                ));
            }
        }
        let eliminated_expected: Vec<usize> =
            (1..=ORBIT_COUNT).filter(|k| !ADMISSIBLE_LABELS.contains(k)).collect();

        // Search pairwise non-collinear triples whose perps cover exactly
        // the eliminated labels.
        let mut assumed: Option<[usize; 3]> = None;
        'outer: for a in 0..o14.len() {
            for b in a + 1..o14.len() {
                if space.adjacent(o14[a], o14[b]) {
                    continue;
                }
                for c in b + 1..o14.len() {
                    if space.adjacent(o14[a], o14[c]) || space.adjacent(o14[b], o14[c]) {
                        continue;
                    }
                    let triple = [o14[a], o14[b], o14[c]];
                    let mut cover = space.perp_set(triple[0]);
                    cover.or_assign(&space.perp_set(triple[1]));
                    cover.or_assign(&space.perp_set(triple[2]));
                    for &t in &triple {
                        cover.remove(t);
                    }
                    let covered: Vec<usize> = (1..=ORBIT_COUNT)
                        .filter(|&k| {
                            self.orbits
                                .orbit(self.orbit_of_label[k - 1])
                                .iter()
                                .all(|&pt| cover.contains(pt))
                        })
                        .collect();
                    if covered == eliminated_expected {
                        assumed = Some(triple);
                        break 'outer;
                    }
                }
            }
        }
        let triple = assumed.ok_or_else(|| {
            stage_err(
                "elimination",
                "a non-collinear label-14 triple whose perps cover exactly the 20 eliminated labels",
                "no such triple",
            )
        })?;

        let orbit_sizes: Vec<usize> = (1..=ORBIT_COUNT)
            .map(|k| self.orbits.orbit(self.orbit_of_label[k - 1]).len())
            .collect();

        // The tight system.  For a hypothetical ovoid ψ (size 33) and any
        // tight weight vector w, the identity w·ψ^⊤ = (w·j^⊤)·33/693 holds;
        // with orbit-constant w this is one linear equation on the per-orbit
        // intersection counts x_k.  The space of orbit-constant tight
        // vectors is the kernel of [(B − θ⁺·I) | −1] over the collapsed
        // adjacency B (last column: the all-ones multiplier).
        let rat = |v: i64| BigRational::from_integer(BigInt::from(v));
        let mut kernel_input = RatMat::zero(ORBIT_COUNT, ORBIT_COUNT + 1);
        for k in 0..ORBIT_COUNT {
            for l in 0..ORBIT_COUNT {
                let mut v = rat(self.quotient[k][l]);
                if k == l {
                    v -= rat(self.theta_plus);
                }
                kernel_input.set(k, l, v);
            }
            kernel_input.set(k, ORBIT_COUNT, rat(-1));
        }
        let tight_basis = kernel_input.kernel();
        if tight_basis.rows != TIGHT_SPACE_DIM {
            return Err(stage_err(
                "tight space dimension",
                TIGHT_SPACE_DIM,
                tight_basis.rows,
            ));
        }

        // One equation per basis vector, restricted to the admissible
        // non-assumed counts (eliminated counts are zero, the assumed count
        // is three).
        let ovoid_ratio = BigRational::new(
            BigInt::from(space.ovoid_number()),
            BigInt::from(space.n()),
        );
        let vars: Vec<usize> = ADMISSIBLE_LABELS
            .iter()
            .copied()
            .filter(|&k| k != ASSUMED_LABEL)
            .collect();
        let mut sys = RatMat::zero(tight_basis.rows, vars.len() + 1);
        for bi in 0..tight_basis.rows {
            let w = tight_basis.row(bi);
            let total: BigRational = (0..ORBIT_COUNT)
                .map(|k| w[k].clone() * rat(orbit_sizes[k] as i64))
                .sum();
            let rhs = total * &ovoid_ratio - w[ASSUMED_LABEL - 1].clone() * rat(3);
            for (j, &k) in vars.iter().enumerate() {
                sys.set(bi, j, w[k - 1].clone());
            }
            sys.set(bi, vars.len(), rhs);
        }
        let pivots = sys.rref();
        if pivots.contains(&vars.len()) {
            return Err(stage_err(
                "system consistency",
                "a solvable tight system",
                "a pivot in the right-hand side",
            ));
        }
        if pivots.len() != SYSTEM_RANK {
            return Err(stage_err("system rank", SYSTEM_RANK, pivots.len()));
        }
        let free_labels: Vec<usize> = (0..vars.len())
            .filter(|j| !pivots.contains(j))
            .map(|j| vars[j])
            .collect();
        if free_labels != FREE_LABELS {
            return Err(stage_err(
                "free labels",
                format!("{FREE_LABELS:?}"),
                format!("{free_labels:?}"),
            ));
        }

        // Affine solution in the two free counts (t, u), one row per
        // variable, then box constraints 0 ≤ x_k ≤ |O_k| as half planes.
        // The feasible region is a bounded polygon, so it is the convex hull
        // of its vertices; all feasible vertices coinciding proves the
        // relaxed solution is a single point.
        let free_cols: [usize; 2] = {
            let mut it = (0..vars.len()).filter(|j| !pivots.contains(j));
            [it.next().unwrap(), it.next().unwrap()]
        };
        // affine[j] = (constant, t-coefficient, u-coefficient) for vars[j]
        let mut affine: Vec<[BigRational; 3]> = vec![
            [rat(0), rat(0), rat(0)];
            vars.len()
        ];
        affine[free_cols[0]] = [rat(0), rat(1), rat(0)];
        affine[free_cols[1]] = [rat(0), rat(0), rat(1)];
        for (r, &pc) in pivots.iter().enumerate() {
            let row = sys.row(r);
            affine[pc] = [
                row[vars.len()].clone(),
                -row[free_cols[0]].clone(),
                -row[free_cols[1]].clone(),
            ];
        }
        // half planes a·t + b·u ≤ c
        let mut planes: Vec<[BigRational; 3]> = Vec::new();
        for (j, &k) in vars.iter().enumerate() {
            let [c0, a, b] = affine[j].clone();
            // x_j ≥ 0  ⟺  −a·t − b·u ≤ c0
            planes.push([-a.clone(), -b.clone(), c0.clone()]);
            // x_j ≤ |O_k|
            planes.push([a, b, rat(orbit_sizes[k - 1] as i64) - c0]);
        }
        let mut vertex: Option<(BigRational, BigRational)> = None;
        for i in 0..planes.len() {
            for j in i + 1..planes.len() {
                let det = planes[i][0].clone() * &planes[j][1]
                    - planes[j][0].clone() * &planes[i][1];
                if det == rat(0) {
                    continue;
                }
                let t = (planes[i][2].clone() * &planes[j][1]
                    - planes[j][2].clone() * &planes[i][1])
                    / &det;
                let u = (planes[i][0].clone() * &planes[j][2]
                    - planes[j][0].clone() * &planes[i][2])
                    / &det;
                let ok = planes
                    .iter()
                    .all(|p| p[0].clone() * &t + p[1].clone() * &u <= p[2]);
                if !ok {
                    continue;
                }
                match &vertex {
                    None => vertex = Some((t, u)),
                    Some((vt, vu)) if *vt == t && *vu == u => {}
                    Some(other) => {
                        return Err(stage_err(
                            "relaxed uniqueness",
                            format!("a single feasible vertex, first {other:?}"),
                            format!("also ({t}, {u})"),
                        ))
                    }
                }
            }
        }
        let (t, u) = vertex.ok_or_else(|| {
            stage_err("relaxed feasibility", "a nonempty feasible region", "empty")
        })?;

        // The unique relaxed solution over all admissible labels.
        let mut relaxed_values: Vec<(usize, BigRational)> = Vec::new();
        for &k in ADMISSIBLE_LABELS.iter() {
            let value = if k == ASSUMED_LABEL {
                rat(3)
            } else {
                let j = vars.iter().position(|&v| v == k).expect("admissible variable");
                let [c0, a, b] = affine[j].clone();
                c0 + a * &t + b * &u
            };
            if value < rat(0) || value > rat(orbit_sizes[k - 1] as i64) {
                return Err(stage_err(
                    "solution bounds",
                    format!("0 ≤ x_{k} ≤ {}", orbit_sizes[k - 1]),
                    format!("{value}"),
                ));
            }
            relaxed_values.push((k, value));
        }
        let forced_empty: Vec<usize> = relaxed_values
            .iter()
            .filter(|(_, v)| *v == rat(0))
            .map(|&(k, _)| k)
            .collect();
        if forced_empty != FORCED_EMPTY_LABELS {
            return Err(stage_err(
                "forced-empty labels",
                format!("{FORCED_EMPTY_LABELS:?}"),
                format!("{forced_empty:?}"),
            ));
        }
        let surviving: Vec<usize> = ADMISSIBLE_LABELS
            .iter()
            .copied()
            .filter(|k| !FORCED_EMPTY_LABELS.contains(k))
            .collect();

        // Among the surviving labels only the equation variable carries a
        // nonzero frozen weight, so the weighted-tight identity collapses to
        // a single term.
        for &k in &surviving {
            let wk = ORBIT_WEIGHTS[k - 1];
            if k == EQUATION_LABEL {
                if wk != EQUATION_COEFFICIENT {
                    return Err(stage_err(
                        "equation coefficient",
                        EQUATION_COEFFICIENT,
                        wk,
                    ));
                }
            } else if k != ASSUMED_LABEL && wk != 0 {
                return Err(stage_err(
                    "equation support",
                    "zero weight on every surviving label but the variable",
                    format!("label {k} has weight {wk}"),
                ));
            }
        }
        if ORBIT_WEIGHTS[ASSUMED_LABEL - 1] != 0 {
            return Err(stage_err(
                "assumed weight",
                "zero weight on the assumed label",
                ORBIT_WEIGHTS[ASSUMED_LABEL - 1],
            ));
        }
        let relaxed = relaxed_values
            .iter()
            .find(|&&(k, _)| k == EQUATION_LABEL)
            .map(|(_, v)| v.clone())
            .expect("equation label is admissible");
        // 24·x₁₅ = 36 must hold exactly at the relaxed point, and x₁₅ must
        // not be an integer — so no integer solution exists at all (the
        // relaxed solution is unique).
        if relaxed.clone() * rat(EQUATION_COEFFICIENT) != rat(TIGHT_PARAMETER) {
            return Err(stage_err(
                "final equation",
                format!("{EQUATION_COEFFICIENT}·x = {TIGHT_PARAMETER}"),
                format!("x = {relaxed}"),
            ));
        }
        let integer_feasible = relaxed.denom() == &BigInt::from(1);
        if integer_feasible {
            return Err(stage_err(
                "integrality",
                "a non-integral forced count",
                format!("{relaxed}"),
            ));
        }
        // Sanity: the frozen weight vector's identity holds at the solution.
        let weight_check: BigRational = relaxed_values
            .iter()
            .map(|(k, v)| rat(ORBIT_WEIGHTS[k - 1]) * v)
            .sum();
        if weight_check != rat(TIGHT_PARAMETER) {
            return Err(stage_err(
                "weight identity",
                TIGHT_PARAMETER,
                weight_check,
            ));
        }

        let subgeometry_admissible: Vec<usize> = W5_LABELS
            .iter()
            .copied()
            .filter(|&k| k != ASSUMED_LABEL && ADMISSIBLE_LABELS.contains(&k))
            .collect();
        let label = |i: usize| space.point(i).label(f);
        Ok(H54Report {
            space: format!("{:?}", space),
            anchor_points: self.anchors.iter().map(|&i| label(i)).collect(),
            full_stabilizer_order: self.full_stabilizer.order(),
            group_order: self.group.order(),
            orbit_count: self.orbits.count(),
            orbit_sizes,
            orbit_representatives: (1..=ORBIT_COUNT)
                .map(|k| {
                    let mut pts = self.orbit_points(k);
                    pts.sort_unstable();
                    label(pts[0])
                })
                .collect(),
            orbit_weights: ORBIT_WEIGHTS.to_vec(),
            tight_parameter: TIGHT_PARAMETER.to_string(),
            weight_total: WEIGHT_TOTAL.to_string(),
            line_label: LINE_LABEL,
            line_points: self.line.iter().map(|&i| label(i)).collect(),
            cone_point_label: CONE_POINT_LABEL,
            cone_point: label(self.cone_point),
            plane_singular_count: self.plane_singular.count(),
            plane_remainder_labels: PLANE_REMAINDER_LABELS.to_vec(),
            plane_subgeometry_labels: {
                let mut v: Vec<usize> =
                    self.plane_subgeometries.iter().map(|s| s.label).collect();
                v.sort_unstable();
                v
            },
            invariant_tight_set_labels: self.tight63_label_sets.clone(),
            symplectic_subgeometry_labels: self.symplectic63_labels.clone(),
            subgeometry_admissible_labels: subgeometry_admissible,
            assumed_triple: triple.iter().map(|&i| label(i)).collect(),
            eliminated_labels: eliminated_expected,
            admissible_labels: ADMISSIBLE_LABELS.to_vec(),
            tight_space_dimension: TIGHT_SPACE_DIM,
            system_rank: SYSTEM_RANK,
            system_free_labels: FREE_LABELS.to_vec(),
            relaxed_values: relaxed_values
                .iter()
                .map(|(k, v)| (*k, v.to_string()))
                .collect(),
            forced_empty_labels: forced_empty,
            surviving_labels: surviving,
            equation_coefficient: EQUATION_COEFFICIENT,
            equation_variable_label: EQUATION_LABEL,
            equation_rhs: TIGHT_PARAMETER.to_string(),
            relaxed_solution: relaxed.to_string(),
            integer_feasible,
        })
    }
}

/// Rebuilds the configuration and runs the full elimination pipeline.
pub fn h54_certificate() -> Result<H54Report> {
    H54Config::build()?.report()
}

/// Extends a GF(2)-closed seed (the span of three vectors with pairwise
/// form values in GF(2)) to all 63-point symplectic GF(2)-subgeometries that
/// are unions of group orbits.  Returned sets are sorted point lists.
fn grow_symplectic(
    space: &Arc<PolarSpace>,
    orbits: &OrbitPartition,
    seed: &[Vec<El>; 3],
) -> Result<Vec<Vec<usize>>> {
    let f = space.field().clone();
    let form = space.form();

    // All seven nonzero GF(2)-combinations of the seed.
    let mut vectors: Vec<Vec<El>> = Vec::new();
    for m in 1usize..8 {
        let mut v = vec![El::ZERO; seed[0].len()];
        for (b, s) in seed.iter().enumerate() {
            if m & (1 << b) != 0 {
                v = vec_add(&f, &v, s);
            }
        }
        vectors.push(v);
    }
    let mut points = BitSet::new(space.n());
    for v in &vectors {
        let idx = space.index_of_vector(v).ok_or_else(|| {
            Error::Construction("seed span leaves the variety".into())
        })?;
        if points.contains(idx) {
            return Err(Error::Construction(
                "seed span has projectively repeated vectors".into(),
            ));
        }
        points.insert(idx);
    }
    for a in &vectors {
        for b in &vectors {
            if !f.in_prime_field(form.bilinear(a, b)) {
                return Err(Error::Construction(
                    "seed form values leave the prime field".into(),
                ));
            }
        }
    }

    let mut touched = vec![false; orbits.count()];
    let mut committed = 0usize;
    for idx in points.iter() {
        let o = orbits.orbit_index_of(idx);
        if !touched[o] {
            touched[o] = true;
            committed += orbits.orbit(o).len();
        }
    }

    let mut grower = SubgeometryGrower {
        space: space.clone(),
        orbits,
        units: f.elements().filter(|e| !e.is_zero()).collect(),
        basis: seed.to_vec(),
        vectors,
        points,
        touched,
        committed,
        found: Vec::new(),
    };
    grower.search(0)?;
    let mut found = grower.found;
    found.sort();
    found.dedup();
    Ok(found)
}

/// Backtracking state for [`grow_symplectic`]: a GF(2)-closed vector set
/// whose projective points are distinct and singular, with pairwise form
/// values in the prime field, grown one basis vector at a time under an
/// orbit-budget prune (a group-invariant 63-point target must be a union of
/// whole orbits).
struct SubgeometryGrower<'a> {
    space: Arc<PolarSpace>,
    orbits: &'a OrbitPartition,
    units: Vec<El>,
    basis: Vec<Vec<El>>,
    vectors: Vec<Vec<El>>,
    points: BitSet,
    touched: Vec<bool>,
    committed: usize,
    found: Vec<Vec<usize>>,
}

impl SubgeometryGrower<'_> {
    fn search(&mut self, min_index: usize) -> Result<()> {
        if self.basis.len() == 6 {
            // union-of-orbits requires the committed budget to be met exactly
            if self.committed != 63 || self.points.count() != 63 {
                return Ok(());
            }
            // isomorphism-type check: the induced collinearity graph is the
            // rank-3 symplectic graph over GF(2)
            let measured = srg::params_of_induced(&self.space, &self.points)?;
            let base = Field::new(2, 1)?;
            let table = srg::params_from_table(&base, 3, 2)?;
            if measured == table {
                self.found.push(self.points.to_vec());
            }
            return Ok(());
        }
        let space = self.space.clone();
        let f = space.field();
        let form = space.form();
        for idx in min_index..space.n() {
            if self.points.contains(idx) {
                continue;
            }
            let o = self.orbits.orbit_index_of(idx);
            let extra = if self.touched[o] {
                0
            } else {
                self.orbits.orbit(o).len()
            };
            if self.committed + extra > 63 {
                continue;
            }
            'scaling: for ui in 0..self.units.len() {
                let cand = vec_scale(f, self.units[ui], space.point(idx).coords());
                for b in &self.basis {
                    if !f.in_prime_field(form.bilinear(&cand, b)) {
                        continue 'scaling;
                    }
                }
                // every GF(2)-combination must land on a fresh singular point
                let mut new_pts: Vec<usize> = Vec::with_capacity(self.vectors.len() + 1);
                let mut new_vecs: Vec<Vec<El>> = Vec::with_capacity(self.vectors.len() + 1);
                new_pts.push(idx);
                new_vecs.push(cand.clone());
                let mut ok = true;
                for v in &self.vectors {
                    let s = vec_add(f, v, &cand);
                    match space.index_of_vector(&s) {
                        Some(si) if !self.points.contains(si) && !new_pts.contains(&si) => {
                            new_pts.push(si);
                            new_vecs.push(s);
                        }
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                let saved_committed = self.committed;
                let mut newly_touched: Vec<usize> = Vec::new();
                for &pidx in &new_pts {
                    let oo = self.orbits.orbit_index_of(pidx);
                    if !self.touched[oo] {
                        self.touched[oo] = true;
                        newly_touched.push(oo);
                        self.committed += self.orbits.orbit(oo).len();
                    }
                }
                if self.committed <= 63 {
                    self.basis.push(cand);
                    let added = new_pts.len();
                    for (&pi, vv) in new_pts.iter().zip(new_vecs) {
                        self.points.insert(pi);
                        self.vectors.push(vv);
                    }
                    self.search(idx + 1)?;
                    self.basis.pop();
                    for &pi in &new_pts {
                        self.points.remove(pi);
                    }
                    self.vectors.truncate(self.vectors.len() - added);
                }
                for &oo in &newly_touched {
                    self.touched[oo] = false;
                }
                self.committed = saved_committed;
            }
        }
        Ok(())
    }
}

/// The orbit-collapsed adjacency matrix in label order: entry (k, l) counts
/// the neighbors in the orbit labeled l+1 of a point of the orbit labeled
/// k+1.  Errors if any count varies within an orbit (it cannot for genuine
/// orbits of a collineation group, so a mismatch means misaligned data).
fn collapsed_adjacency(
    space: &Arc<PolarSpace>,
    orbits: &OrbitPartition,
    orbit_of_label: &[usize],
    label_of_orbit: &[usize],
) -> Result<Vec<Vec<i64>>> {
    let mut quotient: Vec<Vec<i64>> = Vec::with_capacity(ORBIT_COUNT);
    for k in 1..=ORBIT_COUNT {
        let mut row: Option<Vec<i64>> = None;
        for &p in orbits.orbit(orbit_of_label[k - 1]) {
            let mut counts = vec![0i64; ORBIT_COUNT];
            for nb in space.neighbors(p).iter() {
                counts[label_of_orbit[orbits.orbit_index_of(nb)] - 1] += 1;
            }
            match &row {
                None => row = Some(counts),
                Some(first) if *first == counts => {}
                Some(first) => {
                    return Err(stage_err(
                        "collapsed adjacency",
                        format!("constant row {first:?} on orbit {k}"),
                        format!("{counts:?} at point {p}"),
                    ))
                }
            }
        }
        quotient.push(row.expect("orbits are nonempty"));
    }
    Ok(quotient)
}

/// All orbit-label sets whose orbits union to a 63-point set S with
/// B·χ_S − θ⁺·χ_S constant — i.e. all group-invariant 63-point 3-tight
/// sets.  Depth-first over labels in increasing order with a
/// remaining-capacity prune; hits arrive lexicographically sorted.
fn tight_unions_63(
    sizes: &[usize],
    quotient: &[Vec<i64>],
    theta_plus: i64,
) -> Vec<Vec<usize>> {
    let n = sizes.len();
    let mut suffix = vec![0usize; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + sizes[i];
    }
    let mut hits: Vec<Vec<usize>> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut indicator = vec![0i64; n];
    fn dfs(
        idx: usize,
        committed: usize,
        sizes: &[usize],
        suffix: &[usize],
        quotient: &[Vec<i64>],
        theta_plus: i64,
        chosen: &mut Vec<usize>,
        indicator: &mut Vec<i64>,
        hits: &mut Vec<Vec<usize>>,
    ) {
        let n = sizes.len();
        if committed > 63 || committed + suffix[idx] < 63 {
            return;
        }
        if idx == n {
            if committed != 63 {
                return;
            }
            let mut constant: Option<i64> = None;
            for k in 0..n {
                let mut v: i64 = (0..n).map(|l| quotient[k][l] * indicator[l]).sum();
                v -= theta_plus * indicator[k];
                match constant {
                    None => constant = Some(v),
                    Some(c) if c == v => {}
                    Some(_) => return,
                }
            }
            hits.push(chosen.clone());
            return;
        }
        chosen.push(idx + 1);
        indicator[idx] = 1;
        dfs(
            idx + 1,
            committed + sizes[idx],
            sizes,
            suffix,
            quotient,
            theta_plus,
            chosen,
            indicator,
            hits,
        );
        chosen.pop();
        indicator[idx] = 0;
        dfs(
            idx + 1,
            committed,
            sizes,
            suffix,
            quotient,
            theta_plus,
            chosen,
            indicator,
            hits,
        );
    }
    dfs(
        0,
        0,
        sizes,
        &suffix,
        quotient,
        theta_plus,
        &mut chosen,
        &mut indicator,
        &mut hits,
    );
    hits
}

#[cfg(test)]
mod tests {
    use std::sync::OnceLock;

    use num::One;

    use super::*;

    fn config() -> &'static H54Config {
        static CONFIG: OnceLock<H54Config> = OnceLock::new();
        CONFIG.get_or_init(|| H54Config::build().expect("certificate configuration"))
    }

    #[test]
    fn group_order_and_orbit_count_match_frozen_tables() {
        let cfg = config();
        assert_eq!(cfg.group.order(), GROUP_ORDER);
        assert_eq!(cfg.orbits.count(), ORBIT_COUNT);
        assert_eq!(cfg.orbits.sizes().iter().sum::<usize>(), 693);
        // the certificate group sits inside the full anchor stabilizer
        assert_eq!(cfg.full_stabilizer.order() % GROUP_ORDER, 0);
    }

    #[test]
    fn certificate_report_pins_every_published_quantity() {
        let report = config().report().expect("certificate report");
        assert_eq!(report.group_order, 144);
        assert_eq!(report.orbit_count, 34);
        assert_eq!(report.orbit_sizes.iter().sum::<usize>(), 693);
        assert_eq!(report.tight_parameter, "36");
        assert_eq!(report.weight_total, "756");
        assert_eq!(report.line_label, 30);
        assert_eq!(report.cone_point_label, 34);
        assert_eq!(report.plane_singular_count, 13);
        assert_eq!(report.plane_remainder_labels, vec![14, 31, 33]);
        assert_eq!(report.plane_subgeometry_labels, vec![14, 31, 33]);
        assert_eq!(
            report.invariant_tight_set_labels,
            vec![
                vec![7, 15, 18, 26, 29, 30, 32, 33, 34],
                vec![9, 13, 18, 19, 29, 30, 31, 32, 34],
                vec![14, 18, 22, 24, 28, 29, 30, 32, 34],
            ]
        );
        assert_eq!(
            report.symplectic_subgeometry_labels,
            vec![14, 18, 22, 24, 28, 29, 30, 32, 34]
        );
        assert_eq!(report.subgeometry_admissible_labels, vec![18, 32]);
        assert_eq!(report.assumed_triple.len(), 3);
        assert_eq!(report.eliminated_labels.len(), 20);
        assert_eq!(
            report.admissible_labels,
            vec![2, 4, 8, 10, 12, 13, 14, 15, 16, 18, 19, 25, 26, 32]
        );
        assert_eq!(report.tight_space_dimension, 16);
        assert_eq!(report.system_rank, 11);
        assert_eq!(report.system_free_labels, vec![26, 32]);
        let relaxed_expected: Vec<(usize, String)> = [
            (2, "9/2"),
            (4, "9/2"),
            (8, "6"),
            (10, "9/2"),
            (12, "9/2"),
            (13, "3/2"),
            (14, "3"),
            (15, "3/2"),
            (16, "0"),
            (18, "0"),
            (19, "3/2"),
            (25, "0"),
            (26, "3/2"),
            (32, "0"),
        ]
        .into_iter()
        .map(|(k, v)| (k, v.to_string()))
        .collect();
        assert_eq!(report.relaxed_values, relaxed_expected);
        assert_eq!(report.forced_empty_labels, vec![16, 18, 25, 32]);
        assert_eq!(
            report.surviving_labels,
            vec![2, 4, 8, 10, 12, 13, 14, 15, 19, 26]
        );
        assert_eq!(report.equation_coefficient, 24);
        assert_eq!(report.equation_variable_label, 15);
        assert_eq!(report.equation_rhs, "36");
        assert_eq!(report.relaxed_solution, "3/2");
        assert!(!report.integer_feasible);
    }

    #[test]
    fn orbit_weights_are_constant_on_orbits_and_fragile() {
        let cfg = config();
        // constancy: every point's weight equals its orbit label's weight
        for i in 0..cfg.space.n() {
            let label = cfg.label_of_point(i);
            assert_eq!(
                cfg.weights.get(i),
                &BigRational::from_integer(BigInt::from(ORBIT_WEIGHTS[label - 1]))
            );
        }
        // fragility: any single-point perturbation destroys tightness
        let mut perturbed = cfg.weights.clone();
        let bumped = perturbed.get(0).clone() + BigRational::one();
        perturbed.set(0, bumped);
        assert!(!matches!(
            classify(&perturbed).expect("classification"),
            Classification::WeightedTight { .. }
        ));
    }
}
