//! The weighted intriguing-set calculus: classification of weight vectors
//! into weighted m-ovoids and weighted i-tight sets, Delsarte-type bounds,
//! the intersection law, and the standard constructions.
//!
//! All arithmetic is exact rational.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::polar::PolarSpace;
use crate::srg;
use num::{BigInt, BigRational, One, Zero};
use std::sync::Arc;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_big(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// A rational weight per point of a fixed polar space.
#[derive(Clone)]
pub struct WeightVector {
    space: Arc<PolarSpace>,
    weights: Vec<BigRational>,
}

impl std::fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "WeightVector[{} points, support {}]",
            self.weights.len(),
            self.support().count()
        )
    }
}

impl WeightVector {
    pub fn zeros(space: Arc<PolarSpace>) -> WeightVector {
        let n = space.n();
        WeightVector {
            space,
            weights: vec![BigRational::zero(); n],
        }
    }

    /// The all-ones vector j.
    pub fn all_ones(space: Arc<PolarSpace>) -> WeightVector {
        let n = space.n();
        WeightVector {
            space,
            weights: vec![BigRational::one(); n],
        }
    }

    pub fn from_weights(space: Arc<PolarSpace>, weights: Vec<BigRational>) -> Result<WeightVector> {
        if weights.len() != space.n() {
            return Err(Error::DimensionMismatch {
                expected: space.n(),
                got: weights.len(),
            });
        }
        Ok(WeightVector { space, weights })
    }

    /// Characteristic vector of a point set.
    pub fn characteristic(space: Arc<PolarSpace>, set: &BitSet) -> WeightVector {
        let mut v = WeightVector::zeros(space);
        for i in set.iter() {
            v.weights[i] = BigRational::one();
        }
        v
    }

    pub fn space(&self) -> &Arc<PolarSpace> {
        &self.space
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn get(&self, i: usize) -> &BigRational {
        &self.weights[i]
    }

    pub fn set(&mut self, i: usize, v: BigRational) {
        self.weights[i] = v;
    }

    /// jχ^T: the sum of all weights.
    pub fn total(&self) -> BigRational {
        self.weights.iter().sum()
    }

    /// χψ^T: the standard inner product.
    pub fn dot(&self, other: &WeightVector) -> BigRational {
        assert!(Arc::ptr_eq(&self.space, &other.space) || self.weights.len() == other.weights.len());
        self.weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// χAχ^T over the collinearity graph.
    pub fn quad_form(&self) -> BigRational {
        let av = srg::adjacency_apply(&self.space, &self.weights);
        self.weights.iter().zip(&av).map(|(a, b)| a * b).sum()
    }

    pub fn support(&self) -> BitSet {
        let mut b = BitSet::new(self.weights.len());
        for (i, w) in self.weights.iter().enumerate() {
            if !w.is_zero() {
                b.insert(i);
            }
        }
        b
    }

    pub fn add(&self, other: &WeightVector) -> WeightVector {
        let weights = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| a + b)
            .collect();
        WeightVector {
            space: self.space.clone(),
            weights,
        }
    }

    pub fn scale(&self, c: &BigRational) -> WeightVector {
        WeightVector {
            space: self.space.clone(),
            weights: self.weights.iter().map(|w| w * c).collect(),
        }
    }

    /// Image under a point permutation: the new weight at perm[i] is the old
    /// weight at i.
    pub fn permute(&self, perm: &[usize]) -> WeightVector {
        assert_eq!(perm.len(), self.weights.len());
        let mut out = WeightVector::zeros(self.space.clone());
        for (i, &pi) in perm.iter().enumerate() {
            out.weights[pi] = self.weights[i].clone();
        }
        out
    }
}

/// Outcome of [`classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// χ ∈ ⟨j⟩ (including the zero vector).
    Trivial,
    /// Eigenvector of θ⁻ after centering: weighted m-ovoid.
    WeightedOvoid { m: BigRational },
    /// Eigenvector of θ⁺ after centering: weighted i-tight set.
    WeightedTight { i: BigRational },
    Neither,
}

/// Classifies a weight vector by exact eigenvector membership of the
/// centered vector χ − (Σχ/n)·j.
pub fn classify(chi: &WeightVector) -> Result<Classification> {
    let space = chi.space();
    if chi.weights.iter().all(|w| w == &chi.weights[0]) {
        return Ok(Classification::Trivial);
    }
    let params = srg::params_of_space(space)?;
    let total = chi.total();
    if srg::eigencheck(space, chi.weights(), &params.theta_minus) {
        // jχ^T = m·nθ⁻/(θ⁻−k)  ⟹  m = jχ^T(θ⁻−k)/(nθ⁻)
        let m = &total * (rat_big(&params.theta_minus - &params.k))
            / (rat_big(params.n.clone()) * rat_big(params.theta_minus.clone()));
        return Ok(Classification::WeightedOvoid { m });
    }
    if srg::eigencheck(space, chi.weights(), &params.theta_plus) {
        // jψ^T = i(1 − k/θ⁻)  ⟹  i = jψ^T·θ⁻/(θ⁻−k)
        let i = &total * rat_big(params.theta_minus.clone())
            / rat_big(&params.theta_minus - &params.k);
        return Ok(Classification::WeightedTight { i });
    }
    Ok(Classification::Neither)
}

/// The three Delsarte quantities and the equality pattern:
/// lower ≤ middle ≤ upper with
/// lower = (jχ^T)²k + θ⁻(nχχ^T − (jχ^T)²), middle = nχAχ^T, and the θ⁺
/// analogue on the right. Left equality ⟺ weighted ovoid (or trivial),
/// right equality ⟺ weighted tight (or trivial).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelsarteBounds {
    pub lower: BigRational,
    pub middle: BigRational,
    pub upper: BigRational,
    pub left_equality: bool,
    pub right_equality: bool,
}

pub fn delsarte_bounds(chi: &WeightVector) -> Result<DelsarteBounds> {
    let space = chi.space();
    let params = srg::params_of_space(space)?;
    let n = rat_big(params.n.clone());
    let k = rat_big(params.k.clone());
    let tp = rat_big(params.theta_plus.clone());
    let tm = rat_big(params.theta_minus.clone());
    let total = chi.total();
    let norm = chi.dot(chi);
    let spread = &n * &norm - &total * &total;
    let lower = &total * &total * &k + &tm * &spread;
    let upper = &total * &total * &k + &tp * &spread;
    let middle = &n * chi.quad_form();
    if lower > middle || middle > upper {
        return Err(Error::Construction(
            "Delsarte inequality violated — adjacency or arithmetic bug".into(),
        ));
    }
    Ok(DelsarteBounds {
        left_equality: lower == middle,
        right_equality: middle == upper,
        lower,
        middle,
        upper,
    })
}

/// The intersection law: a weighted m-ovoid and a weighted i-tight set meet
/// with χψ^T = m·i. Errors when the inputs do not classify as stated;
/// the equality itself is asserted.
pub fn intersect(chi: &WeightVector, psi: &WeightVector) -> Result<BigRational> {
    let m = match classify(chi)? {
        Classification::WeightedOvoid { m } => m,
        other => {
            return Err(Error::Precondition(format!(
                "first argument must classify as a weighted ovoid, got {other:?}"
            )))
        }
    };
    let i = match classify(psi)? {
        Classification::WeightedTight { i } => i,
        other => {
            return Err(Error::Precondition(format!(
                "second argument must classify as a weighted tight set, got {other:?}"
            )))
        }
    };
    let prod = chi.dot(psi);
    let expected = &m * &i;
    if prod != expected {
        return Err(Error::Construction(format!(
            "intersection law failed: χψ^T = {prod} but m·i = {expected}"
        )));
    }
    Ok(prod)
}

/// q^{d−1+x} powers over the space's field, in half-exponent units.
fn space_q_power(space: &PolarSpace, half: i64) -> BigRational {
    srg::rational_q_power(space.field().p() as u64, space.field().h(), half)
}

/// The point-based weighted ovoid −(q^{d−1}−1)χ_P + χ_{P∼};
/// classifies as a weighted (q^{d−1}−1)/(q−1)-ovoid.
pub fn std_ovoid(space: &Arc<PolarSpace>, p: usize) -> WeightVector {
    let d = space.rank() as i64;
    let coef = space_q_power(space, 2 * (d - 1)) - rat(1);
    let mut v = WeightVector::zeros(space.clone());
    v.set(p, -coef);
    for x in space.neighbors(p).iter() {
        v.set(x, BigRational::one());
    }
    v
}

/// The point-based weighted tight set (q^{d−2+e}+1)χ_P + χ_{P∼};
/// classifies as weighted (q^{d−2+e}+1)-tight.
pub fn std_tightset(space: &Arc<PolarSpace>, p: usize) -> WeightVector {
    let d = space.rank() as i64;
    let coef = space_q_power(space, 2 * (d - 2) + space.twoe() as i64) + rat(1);
    let mut v = WeightVector::zeros(space.clone());
    v.set(p, coef);
    for x in space.neighbors(p).iter() {
        v.set(x, BigRational::one());
    }
    v
}

/// The subspace-based weighted tight set (q^{d+e−2−s}+1)χ_S + χ_{S∼} for a
/// totally singular subspace S of projective dimension s, 0 ≤ s < d−1.
/// S∼ is the set of singular points of S^⊥ ∖ S.
pub fn subspace_tight(
    space: &Arc<PolarSpace>,
    s: &crate::geometry::Subspace,
) -> Result<WeightVector> {
    let d = space.rank() as i64;
    let sdim = s.proj_dim();
    if sdim < 0 || sdim >= d - 1 {
        return Err(Error::Precondition(format!(
            "projective dimension {sdim} out of range 0 ≤ s < {}",
            d - 1
        )));
    }
    if !space.form().is_totally_singular(s) {
        return Err(Error::Precondition(
            "subspace must be totally singular".into(),
        ));
    }
    let coef = space_q_power(space, 2 * (d - 2 - sdim) + space.twoe() as i64) + rat(1);
    let s_points = space.subspace_point_set(s);
    let perp = space.form().perp(s);
    let perp_points = space.subspace_point_set(&perp);
    let mut v = WeightVector::zeros(space.clone());
    for x in s_points.iter() {
        v.set(x, coef.clone());
    }
    for x in perp_points.difference(&s_points).iter() {
        v.set(x, BigRational::one());
    }
    Ok(v)
}

/// The Baer-symplectic tight set: the characteristic vector of an embedded
/// subfield symplectic space, classifying as weighted (q+1)-tight.
pub fn baer_symplectic_tight(space: &Arc<PolarSpace>, points: &BitSet) -> Result<WeightVector> {
    let v = WeightVector::characteristic(space.clone(), points);
    let q0 = {
        // base field order: the Hermitian field has even h
        let f = space.field();
        (f.p() as u64).pow(f.h() / 2)
    };
    match classify(&v)? {
        Classification::WeightedTight { i } if i == rat(q0 as i64 + 1) => Ok(v),
        other => Err(Error::Construction(format!(
            "embedded subfield point set is not (q+1)-tight: {other:?}"
        ))),
    }
}

/// Intersection counts of one point class against the three parts of a
/// Hermitian-pair configuration.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PairClassCounts {
    pub class: &'static str,
    pub size: usize,
    pub to_h: usize,
    pub to_h_perp: usize,
    pub to_c: usize,
}

/// The three-term weighted tight set built from a nondegenerate Hermitian
/// section pair (H_s, H_s^⊥) and the connecting set C(H_s).
pub struct HermitianPairTight {
    pub vector: WeightVector,
    pub h_set: BitSet,
    pub h_perp_set: BitSet,
    pub c_set: BitSet,
    pub i: BigRational,
    pub class_counts: Vec<PairClassCounts>,
}

/// Builds the Prop-style pair tight set on a Hermitian space of rank d > 2
/// with even split parameter 1 < s < 2d−2: the section H_s spans the first
/// s+1 coordinates, its perp section the rest, and C(H_s) consists of all
/// singular points strictly between the two sections on totally singular
/// lines. The resulting vector
/// (1−q^{2d−2−s})χ_{H_s} + (1−q^s)χ_{H_s^⊥} + χ_{C(H_s)}
/// must classify as weighted (q^s−1)(q^{2d−2−s}−1)-tight; per-class
/// intersection counts are measured exhaustively and the tight-set per-point
/// identity is checked for every class.
pub fn hermitian_pair_tight(space: &Arc<PolarSpace>, s: usize) -> Result<HermitianPairTight> {
    use crate::polar::PolarFamily;
    if space.family() != PolarFamily::H || space.vdim() % 2 != 0 {
        return Err(Error::Precondition(
            "pair tight sets need an even-dimensional Hermitian space".into(),
        ));
    }
    let d = space.rank();
    if d <= 2 {
        return Err(Error::Precondition("need rank d > 2".into()));
    }
    if s % 2 != 0 || s <= 1 || s >= 2 * d - 2 {
        return Err(Error::Precondition(format!(
            "split parameter s={s} must be even with 1 < s < {}",
            2 * d - 2
        )));
    }
    let f = space.field();
    // q here is the BASE of the Hermitian field GF(q^2)
    let q = (f.p() as u64).pow(f.h() / 2) as i64;
    let qq = q * q; // field order q²

    // section supported on the first s+1 coordinates, perp section on the rest
    let split = s + 1;
    let mut h_set = BitSet::new(space.n());
    let mut h_perp_set = BitSet::new(space.n());
    for (idx, p) in space.points().iter().enumerate() {
        let head_zero = p.coords()[..split].iter().all(|e| e.is_zero());
        let tail_zero = p.coords()[split..].iter().all(|e| e.is_zero());
        if tail_zero {
            h_set.insert(idx);
        } else if head_zero {
            h_perp_set.insert(idx);
        }
    }

    // C(H_s): singular points on totally singular lines joining the two
    // sections, endpoints excluded
    let mut c_set = BitSet::new(space.n());
    for x in h_set.iter() {
        for y in h_perp_set.iter() {
            if !space.adjacent(x, y) {
                continue;
            }
            for lam in 1..f.q() {
                let v = crate::linalg::vec_add_scaled(
                    f,
                    &space.point(x).coords().to_vec(),
                    crate::field::El(lam),
                    space.point(y).coords(),
                );
                let idx = space
                    .index_of_vector(&v)
                    .ok_or_else(|| Error::Construction("connecting point not singular".into()))?;
                c_set.insert(idx);
            }
        }
    }
    let expected_c = h_set.count() * h_perp_set.count() * (qq as usize - 1);
    if c_set.count() != expected_c {
        return Err(Error::Construction(format!(
            "C(H_s) has {} points, expected |H_s|·|H_s^⊥|·(q²−1) = {}",
            c_set.count(),
            expected_c
        )));
    }

    // weights: (1−q^{2d−2−s}) on H_s, (1−q^s) on H_s^⊥, +1 on C
    let pw = |exp: u32| -> i64 { q.pow(exp) };
    let w_h = rat(1 - pw((2 * d - 2 - s) as u32));
    let w_perp = rat(1 - pw(s as u32));
    let mut v = WeightVector::zeros(space.clone());
    for x in h_set.iter() {
        v.set(x, w_h.clone());
    }
    for x in h_perp_set.iter() {
        v.set(x, w_perp.clone());
    }
    for x in c_set.iter() {
        v.set(x, BigRational::one());
    }

    let expected_i = rat((pw(s as u32) - 1) * (pw((2 * d - 2 - s) as u32) - 1));
    let class = classify(&v)?;
    let i = match class {
        Classification::WeightedTight { ref i } if *i == expected_i => i.clone(),
        other => {
            return Err(Error::Construction(format!(
                "pair configuration does not classify as weighted \
                 (q^s−1)(q^{{2d−2−s}}−1)-tight: got {other:?} — the connecting-set \
                 definition needs revisiting"
            )))
        }
    };

    // exhaustive per-class intersection counts, constant within each class
    let params = srg::params_of_space(space)?;
    let sigma = v.total();
    let n = rat_big(params.n.clone());
    let rhs = &sigma * rat_big(&params.k - &params.theta_plus) / &n;
    let tp = rat_big(params.theta_plus.clone());
    let mut class_counts: Vec<PairClassCounts> = Vec::new();
    let mut rest = BitSet::full(space.n());
    rest.andnot_assign(&h_set);
    rest.andnot_assign(&h_perp_set);
    rest.andnot_assign(&c_set);
    for (name, set) in [
        ("in_section", &h_set),
        ("in_perp_section", &h_perp_set),
        ("in_connector", &c_set),
        ("outside", &rest),
    ] {
        let mut counts: Option<(usize, usize, usize)> = None;
        for p in set.iter() {
            let nb = space.neighbors(p);
            let triple = (
                nb.intersection_count(&h_set),
                nb.intersection_count(&h_perp_set),
                nb.intersection_count(&c_set),
            );
            match &counts {
                None => counts = Some(triple),
                Some(prev) if *prev == triple => {}
                Some(prev) => {
                    return Err(Error::Construction(format!(
                        "intersection counts not constant on class {name}: \
                         {triple:?} vs {prev:?}"
                    )))
                }
            }
            // per-point tight identity: (Aψ)_P − θ⁺ψ_P = σ(k−θ⁺)/n
            let apsi = &w_h * rat(triple.0 as i64)
                + &w_perp * rat(triple.1 as i64)
                + rat(triple.2 as i64);
            if &apsi - &tp * v.get(p) != rhs {
                return Err(Error::Construction(format!(
                    "per-point tight identity fails on class {name} at point {p}"
                )));
            }
        }
        let (a, b, c) = counts.ok_or_else(|| {
            Error::Construction(format!("point class {name} is empty"))
        })?;
        class_counts.push(PairClassCounts {
            class: name,
            size: set.count(),
            to_h: a,
            to_h_perp: b,
            to_c: c,
        });
    }

    Ok(HermitianPairTight {
        vector: v,
        h_set,
        h_perp_set,
        c_set,
        i,
        class_counts,
    })
}

/// Exact rank of a family of weight vectors (as rational row vectors).
pub fn family_rank(vectors: &[WeightVector]) -> usize {
    let rows: Vec<Vec<BigRational>> = vectors.iter().map(|v| v.weights.clone()).collect();
    crate::ratmat::RatMat::from_rows(&rows).rank()
}

/// The result of averaging translates of an intriguing vector over a
/// subgroup: the invariant vectors, their values on the subgroup's point
/// orbits, and the spanning diagnosis against the independently computed
/// dimension of the invariant intriguing space.
pub struct AveragedFamily {
    /// One invariant vector Σ_{u∈U} χ^u per input translate χ.
    pub vectors: Vec<WeightVector>,
    /// The orbit partition of the averaging subgroup.
    pub orbits: crate::group::OrbitPartition,
    /// Row i is vector i's (constant) value on each orbit, in orbit order.
    pub orbit_values: Vec<Vec<BigRational>>,
    /// Classification of each averaged vector (same type as the input, or
    /// trivial when the average lands in ⟨j⟩).
    pub classifications: Vec<Classification>,
    /// Rank of `orbit_values` over the rationals.
    pub rank: usize,
    /// Dimension of the full space of U-invariant vectors of this type:
    /// the kernel dimension of the quotient eigen-system over orbit space.
    pub invariant_dimension: usize,
    /// Whether the family spans that space (`rank == invariant_dimension`).
    pub spans: bool,
}

/// Averages each translate χ^g of an intriguing vector over a finite
/// form-preserving collineation subgroup U, producing the U-invariant
/// vectors Σ_{u∈U} (χ^g)^u.  Sums of same-type intriguing vectors stay
/// intriguing, so each average classifies as the input type (or collapses
/// into ⟨j⟩); a family of averages spans the whole space of U-invariant
/// vectors of that type exactly when enough translates are supplied, which
/// the result diagnoses by comparing its rank over orbit coordinates with
/// the dimension of the invariant eigenspace computed from the quotient
/// matrix of the orbit partition.
pub fn group_average(
    translates: &[WeightVector],
    subgroup: &crate::group::GroupHandle,
) -> Result<AveragedFamily> {
    let first = translates
        .first()
        .ok_or_else(|| Error::Precondition("need at least one translate".into()))?;
    let space = first.space().clone();
    if translates.iter().any(|t| t.space().n() != space.n()) {
        return Err(Error::Precondition(
            "translates live on different spaces".into(),
        ));
    }
    for g in subgroup.generators() {
        if g.preserves_form_scalar(space.form()).is_none() {
            return Err(Error::Precondition(
                "averaging subgroup does not preserve the form".into(),
            ));
        }
    }

    let base_type = classify(first)?;
    let theta = match base_type {
        Classification::WeightedTight { .. } => {
            srg::params_of_space(&space)?.theta_plus
        }
        Classification::WeightedOvoid { .. } => {
            srg::params_of_space(&space)?.theta_minus
        }
        other => {
            return Err(Error::Precondition(format!(
                "translates must be nontrivial intriguing vectors, got {other:?}"
            )))
        }
    };
    let same_type = |c: &Classification| {
        matches!(
            (&base_type, c),
            (Classification::WeightedTight { .. }, Classification::WeightedTight { .. })
                | (Classification::WeightedOvoid { .. }, Classification::WeightedOvoid { .. })
                | (_, Classification::Trivial)
        )
    };
    for t in translates {
        if !same_type(&classify(t)?) {
            return Err(Error::Precondition(
                "translates are not all of the same intriguing type".into(),
            ));
        }
    }

    let perms: Vec<Vec<usize>> = subgroup
        .elements()
        .iter()
        .map(|u| u.point_permutation(&space))
        .collect::<Result<_>>()?;
    let orbits = subgroup.orbits(&space)?;

    let mut vectors = Vec::with_capacity(translates.len());
    let mut orbit_values = Vec::with_capacity(translates.len());
    let mut classifications = Vec::with_capacity(translates.len());
    for t in translates {
        let mut avg = WeightVector::zeros(space.clone());
        for perm in &perms {
            avg = avg.add(&t.permute(perm));
        }
        let class = classify(&avg)?;
        if !same_type(&class) {
            return Err(Error::Construction(format!(
                "average classified as {class:?}, not the input type"
            )));
        }
        let mut values = Vec::with_capacity(orbits.count());
        for cell in orbits.orbits() {
            let v = avg.get(cell[0]).clone();
            if cell.iter().any(|&x| avg.get(x) != &v) {
                return Err(Error::Construction(
                    "averaged vector is not constant on an orbit".into(),
                ));
            }
            values.push(v);
        }
        vectors.push(avg);
        orbit_values.push(values);
        classifications.push(class);
    }

    let rank = crate::ratmat::RatMat::from_rows(&orbit_values).rank();

    // U-invariant vectors of the base type are exactly the orbit-constant
    // solutions of (B̂ − θI)y = c·1 over the quotient matrix B̂, one kernel
    // vector per (y, c) pair.
    let quotient = srg::quotient_matrix(&space, orbits.orbits())?;
    let m = orbits.count();
    let mut eigen = crate::ratmat::RatMat::zero(m, m + 1);
    for i in 0..m {
        for j in 0..m {
            let mut v = rat(quotient[i][j]);
            if i == j {
                v -= rat_big(theta.clone());
            }
            eigen.set(i, j, v);
        }
        eigen.set(i, m, rat(-1));
    }
    let invariant_dimension = eigen.kernel().rows;

    Ok(AveragedFamily {
        vectors,
        orbits,
        orbit_values,
        classifications,
        rank,
        invariant_dimension,
        spans: rank == invariant_dimension,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::El;
    use crate::geometry::Subspace;
    use crate::polar::PolarFamily;

    fn space(family: PolarFamily, vdim: usize, q0: u32) -> Arc<PolarSpace> {
        PolarSpace::standard(family, vdim, q0).unwrap()
    }

    #[test]
    fn j_is_trivial() {
        let s = space(PolarFamily::W, 4, 2);
        let j = WeightVector::all_ones(s);
        assert_eq!(classify(&j).unwrap(), Classification::Trivial);
    }

    #[test]
    fn generator_is_one_tight() {
        let s = space(PolarFamily::H, 6, 2);
        let g = WeightVector::characteristic(s.clone(), &s.generator_point_sets()[0]);
        assert_eq!(g.total(), rat(21));
        match classify(&g).unwrap() {
            Classification::WeightedTight { i } => assert_eq!(i, rat(1)),
            other => panic!("expected 1-tight, got {other:?}"),
        }
    }

    #[test]
    fn std_ovoid_h54() {
        let s = space(PolarFamily::H, 6, 2);
        let v = std_ovoid(&s, 0);
        assert_eq!(v.get(0), &rat(-15));
        match classify(&v).unwrap() {
            Classification::WeightedOvoid { m } => assert_eq!(m, rat(5)),
            other => panic!("expected weighted 5-ovoid, got {other:?}"),
        }
    }

    #[test]
    fn std_tightset_h54_and_w32() {
        let s = space(PolarFamily::H, 6, 2);
        let v = std_tightset(&s, 0);
        assert_eq!(v.get(0), &rat(9));
        match classify(&v).unwrap() {
            Classification::WeightedTight { i } => assert_eq!(i, rat(9)),
            other => panic!("expected weighted 9-tight, got {other:?}"),
        }
        let w = space(PolarFamily::W, 4, 2);
        let v = std_tightset(&w, 3);
        match classify(&v).unwrap() {
            Classification::WeightedTight { i } => assert_eq!(i, rat(3)),
            other => panic!("expected weighted 3-tight, got {other:?}"),
        }
    }

    #[test]
    fn intersection_law_std_pair() {
        let s = space(PolarFamily::H, 6, 2);
        let chi = std_ovoid(&s, 0);
        let gen = WeightVector::characteristic(s.clone(), &s.generator_point_sets()[0]);
        let val = intersect(&chi, &gen).unwrap();
        assert_eq!(val, rat(5));
    }

    #[test]
    fn intersect_rejects_misclassified_input() {
        let s = space(PolarFamily::W, 4, 2);
        let j = WeightVector::all_ones(s.clone());
        let gen = WeightVector::characteristic(s.clone(), &s.generator_point_sets()[0]);
        assert!(intersect(&j, &gen).is_err());
        assert!(intersect(&gen, &gen).is_err());
    }

    #[test]
    fn delsarte_on_generator_and_random() {
        let s = space(PolarFamily::W, 4, 2);
        let gen = WeightVector::characteristic(s.clone(), &s.generator_point_sets()[0]);
        let b = delsarte_bounds(&gen).unwrap();
        assert!(b.right_equality);
        assert!(!b.left_equality);
        // a single point is neither: strict on both sides? a single point's
        // centered vector is never an eigenvector (n > 1 + k), both strict
        let mut one = BitSet::new(s.n());
        one.insert(4);
        let v = WeightVector::characteristic(s.clone(), &one);
        let b = delsarte_bounds(&v).unwrap();
        assert!(!b.left_equality && !b.right_equality);
        assert_eq!(classify(&v).unwrap(), Classification::Neither);
    }

    #[test]
    fn subspace_tight_point_line_and_solid() {
        let s = space(PolarFamily::H, 6, 2);
        // s = 0: equals std_tightset
        let p0 = Subspace::from_generators(s.field(), &[s.point(7).coords().to_vec()]);
        let v0 = subspace_tight(&s, &p0).unwrap();
        let direct = std_tightset(&s, 7);
        assert_eq!(v0.weights(), direct.weights());
        // s = 1: a totally singular line, i = q^{d+e−3}+1 = 3
        let g = &s.generators()[0];
        let line = Subspace::from_generators(
            s.field(),
            &[g.basis().row(0).to_vec(), g.basis().row(1).to_vec()],
        );
        assert_eq!(line.vdim(), 2);
        let v1 = subspace_tight(&s, &line).unwrap();
        match classify(&v1).unwrap() {
            Classification::WeightedTight { i } => assert_eq!(i, rat(3)),
            other => panic!("expected weighted 3-tight, got {other:?}"),
        }
        // generators are out of range
        assert!(subspace_tight(&s, g).is_err());

        // Q⁺(9,2) with s = 3: i = 2^{5−2−3}+1 = 2
        let qp = space(PolarFamily::QPlus, 10, 2);
        let g = &qp.generators()[0];
        let rows: Vec<Vec<El>> = (0..4).map(|r| g.basis().row(r).to_vec()).collect();
        let solid = Subspace::from_generators(qp.field(), &rows);
        assert_eq!(solid.vdim(), 4);
        let v3 = subspace_tight(&qp, &solid).unwrap();
        match classify(&v3).unwrap() {
            Classification::WeightedTight { i } => assert_eq!(i, rat(2)),
            other => panic!("expected weighted 2-tight, got {other:?}"),
        }
    }

    #[test]
    fn closure_under_sum_and_scaling() {
        let s = space(PolarFamily::H, 4, 2);
        let a = std_tightset(&s, 0);
        let b = std_tightset(&s, 11);
        let sum = a.add(&b).scale(&BigRational::new(BigInt::from(2), BigInt::from(3)));
        // two 3-tight sets sum to 6-tight; scaling by 2/3 gives i = 4
        match classify(&sum).unwrap() {
            Classification::WeightedTight { i } => assert_eq!(i, rat(4)),
            other => panic!("expected tight, got {other:?}"),
        }
    }

    #[test]
    fn spanning_of_std_tightsets_w32() {
        // images of the point tight sets together with j span ⟨j⟩ ⊕ V₊:
        // dimension 1 + m_r = 10 on W(3,2)
        let s = space(PolarFamily::W, 4, 2);
        let mut family: Vec<WeightVector> = (0..s.n()).map(|p| std_tightset(&s, p)).collect();
        assert_eq!(family_rank(&family), 10);
        family.push(WeightVector::all_ones(s.clone()));
        assert_eq!(family_rank(&family), 10);
        // j is already in the span; the pure tight part has rank m_r = 9
        // after removing the j component from each vector
        let params = srg::params_of_space(&s).unwrap();
        let n = rat_big(params.n.clone());
        let centered: Vec<WeightVector> = (0..s.n())
            .map(|p| {
                let v = std_tightset(&s, p);
                let shift = v.total() / &n;
                let ones = WeightVector::all_ones(s.clone());
                v.add(&ones.scale(&-shift))
            })
            .collect();
        assert_eq!(family_rank(&centered), 9);
    }

    #[test]
    fn hermitian_pair_tight_h54() {
        let s = space(PolarFamily::H, 6, 2);
        let pair = hermitian_pair_tight(&s, 2).unwrap();
        assert_eq!(pair.h_set.count(), 9);
        assert_eq!(pair.h_perp_set.count(), 9);
        assert_eq!(pair.c_set.count(), 243);
        assert_eq!(pair.i, rat(9));
        assert_eq!(pair.vector.get(pair.h_set.first().unwrap()), &rat(-3));
        // measured class counts
        let by_name: std::collections::HashMap<&str, &PairClassCounts> =
            pair.class_counts.iter().map(|c| (c.class, c)).collect();
        let sec = by_name["in_section"];
        assert_eq!((sec.to_h, sec.to_h_perp, sec.to_c), (0, 9, 27));
        let con = by_name["in_connector"];
        assert_eq!((con.to_h, con.to_h_perp, con.to_c), (1, 1, 66));
        let out = by_name["outside"];
        assert_eq!((out.to_h, out.to_h_perp, out.to_c), (3, 3, 63));
        assert_eq!(out.size, 693 - 9 - 9 - 243);
    }

    #[test]
    fn pair_tight_preconditions() {
        let s = space(PolarFamily::H, 4, 2);
        assert!(hermitian_pair_tight(&s, 2).is_err()); // rank 2
        let s = space(PolarFamily::H, 6, 2);
        assert!(hermitian_pair_tight(&s, 1).is_err()); // odd s
        assert!(hermitian_pair_tight(&s, 4).is_err()); // s ≥ 2d−2
        let w = space(PolarFamily::W, 6, 2);
        assert!(hermitian_pair_tight(&w, 2).is_err()); // not Hermitian
    }
}
