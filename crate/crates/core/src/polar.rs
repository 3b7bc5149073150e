//! Finite classical polar spaces: singular points, the collinearity graph,
//! generator enumeration, quotients, and ovoid projection.
//!
//! A [`PolarSpace`] is immutable after construction. Points are indexed in
//! lexicographic vector order; adjacency is stored as one bitset row per
//! point; generators are enumerated lazily by a canonical-chain depth-first
//! search and cached.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::{El, Field};
use crate::geometry::{FormKind, FormSpec, ProjPoint, QuadType, Subspace};
use crate::linalg::{self, Matrix};
use num::BigUint;
use std::sync::{Arc, OnceLock};

/// The five families of finite classical polar spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum PolarFamily {
    /// Symplectic W(d−1, q)
    W,
    /// Hermitian H(d−1, q²)
    H,
    /// Elliptic quadric Q⁻(d−1, q)
    QMinus,
    /// Parabolic quadric Q(d−1, q)
    Q,
    /// Hyperbolic quadric Q⁺(d−1, q)
    QPlus,
}

impl PolarFamily {
    pub fn parse(s: &str) -> Result<PolarFamily> {
        match s {
            "W" | "w" => Ok(PolarFamily::W),
            "H" | "h" => Ok(PolarFamily::H),
            "Q-" | "q-" | "Qminus" | "QMinus" => Ok(PolarFamily::QMinus),
            "Q" | "q" => Ok(PolarFamily::Q),
            "Q+" | "q+" | "Qplus" | "QPlus" => Ok(PolarFamily::QPlus),
            _ => Err(Error::InvalidParameter(format!(
                "unknown polar family {s:?} (expected W, H, Q-, Q, Q+)"
            ))),
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            PolarFamily::W => "W",
            PolarFamily::H => "H",
            PolarFamily::QMinus => "Q-",
            PolarFamily::Q => "Q",
            PolarFamily::QPlus => "Q+",
        }
    }

    /// Twice the type parameter e of the family (with the vector dimension
    /// needed to disambiguate the two Hermitian cases).
    pub fn twoe(&self, vdim: usize) -> u32 {
        match self {
            PolarFamily::W => 2,
            PolarFamily::H => {
                if vdim % 2 == 0 {
                    1
                } else {
                    3
                }
            }
            PolarFamily::QMinus => 4,
            PolarFamily::Q => 2,
            PolarFamily::QPlus => 0,
        }
    }

    /// Witt index as a function of the vector dimension.
    pub fn rank(&self, vdim: usize) -> usize {
        match self {
            PolarFamily::W | PolarFamily::QPlus => vdim / 2,
            PolarFamily::H => vdim / 2,
            PolarFamily::QMinus => vdim / 2 - 1,
            PolarFamily::Q => (vdim - 1) / 2,
        }
    }
}

/// p^{h·half/2}; callers must arrange for h·half to be even
/// (Hermitian fields have even h, other families use even `half`).
fn pow_half(p: u64, h: u32, half: i64) -> BigUint {
    let twice = h as i64 * half;
    assert!(twice % 2 == 0, "non-integral exponent");
    assert!(twice >= 0, "negative exponent in integer context");
    BigUint::from(p).pow((twice / 2) as u32)
}

/// A finite classical polar space with its collinearity graph.
pub struct PolarSpace {
    family: PolarFamily,
    form: FormSpec,
    rank: usize,
    twoe: u32,
    points: Vec<ProjPoint>,
    adjacency: Vec<BitSet>,
    generators: OnceLock<Vec<Subspace>>,
    generator_points: OnceLock<Vec<BitSet>>,
}

impl std::fmt::Debug for PolarSpace {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            fm,
            "{}({}, {}) [{} points, rank {}]",
            self.family.symbol(),
            self.form.dim - 1,
            self.field().q(),
            self.points.len(),
            self.rank
        )
    }
}

impl PolarSpace {
    /// Builds the polar space of the standard form of a family.
    ///
    /// `vdim` is the dimension of the underlying vector space (one more than
    /// the projective dimension in the space's name) and `q0` the base
    /// parameter of the name — so the Hermitian space H(d−1, q0²) is
    /// coordinatized over GF(q0²).
    pub fn standard(family: PolarFamily, vdim: usize, q0: u32) -> Result<Arc<PolarSpace>> {
        let (p, a) = factor_prime_power(q0)?;
        let field = match family {
            PolarFamily::H => Field::new(p, 2 * a)?,
            _ => Field::new(p, a)?,
        };
        let form = match family {
            PolarFamily::W => FormSpec::symplectic(field, vdim)?,
            PolarFamily::H => FormSpec::hermitian(field, vdim)?,
            PolarFamily::QMinus => FormSpec::quadratic(field, vdim, QuadType::Elliptic)?,
            PolarFamily::Q => FormSpec::quadratic(field, vdim, QuadType::Parabolic)?,
            PolarFamily::QPlus => FormSpec::quadratic(field, vdim, QuadType::Hyperbolic)?,
        };
        let space = PolarSpace::build(form)?;
        debug_assert_eq!(space.family, family);
        Ok(space)
    }

    /// Builds the polar space of an arbitrary nondegenerate reflexive form.
    /// The family is inferred from the form kind and verified against the
    /// closed-form point count; the rank is confirmed by a greedy maximal
    /// chain in the collinearity graph.
    pub fn build(form: FormSpec) -> Result<Arc<PolarSpace>> {
        if !form.is_nondegenerate() {
            return Err(Error::DegenerateForm(format!(
                "{:?} form of dimension {} is degenerate",
                form.kind, form.dim
            )));
        }
        let points = form.singular_points();
        if points.is_empty() {
            return Err(Error::Precondition(
                "form has Witt index 0 (no singular points)".into(),
            ));
        }
        let vdim = form.dim;
        let candidates: Vec<PolarFamily> = match form.kind {
            FormKind::Symplectic => vec![PolarFamily::W],
            FormKind::Hermitian => vec![PolarFamily::H],
            FormKind::Quadratic => {
                if vdim % 2 == 1 {
                    vec![PolarFamily::Q]
                } else {
                    vec![PolarFamily::QPlus, PolarFamily::QMinus]
                }
            }
        };
        let f = form.field.clone();
        let family = candidates
            .into_iter()
            .find(|fam| {
                expected_point_count(&f, fam.rank(vdim), fam.twoe(vdim))
                    == BigUint::from(points.len())
            })
            .ok_or_else(|| {
                Error::Construction(format!(
                    "singular point count {} matches no family at dimension {}",
                    points.len(),
                    vdim
                ))
            })?;
        let rank = family.rank(vdim);
        let twoe = family.twoe(vdim);
        if let Some(sub) = form.subtype {
            let expected = match sub {
                QuadType::Hyperbolic => PolarFamily::QPlus,
                QuadType::Parabolic => PolarFamily::Q,
                QuadType::Elliptic => PolarFamily::QMinus,
            };
            if family != expected {
                return Err(Error::Construction(format!(
                    "declared subtype {sub:?} contradicts point count of {}",
                    family.symbol()
                )));
            }
        }

        // collinearity: distinct singular points with vanishing companion form
        let n = points.len();
        let mut adjacency = vec![BitSet::new(n); n];
        let profiles: Vec<Vec<El>> = points.iter().map(|p| form.bilinear_profile(&p.0)).collect();
        for i in 0..n {
            for j in i + 1..n {
                if linalg::dot(&f, &points[i].0, &profiles[j]).is_zero() {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }

        let space = PolarSpace {
            family,
            form,
            rank,
            twoe,
            points,
            adjacency,
            generators: OnceLock::new(),
            generator_points: OnceLock::new(),
        };
        let greedy = space.greedy_maximal_chain_len(0);
        if greedy != rank {
            return Err(Error::Construction(format!(
                "greedy maximal chain has length {greedy}, expected rank {rank}"
            )));
        }
        Ok(Arc::new(space))
    }

    pub fn family(&self) -> PolarFamily {
        self.family
    }

    pub fn form(&self) -> &FormSpec {
        &self.form
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.form.field
    }

    /// Witt index r.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Twice the type parameter e.
    pub fn twoe(&self) -> u32 {
        self.twoe
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn vdim(&self) -> usize {
        self.form.dim
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &ProjPoint {
        &self.points[i]
    }

    /// Index of a (normalized) point, if singular.
    pub fn point_index(&self, p: &ProjPoint) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    /// Index of the normalization of an arbitrary nonzero vector.
    pub fn index_of_vector(&self, v: &[El]) -> Option<usize> {
        let p = ProjPoint::normalize(self.field(), v)?;
        self.point_index(&p)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    /// Collinearity neighborhood of a point (excluding the point itself).
    pub fn neighbors(&self, i: usize) -> &BitSet {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].count()
    }

    /// The expected number of points per Table-row closed form.
    pub fn expected_n(&self) -> BigUint {
        expected_point_count(self.field(), self.rank, self.twoe)
    }

    /// Number of points in each generator: (Q^r − 1)/(Q − 1).
    pub fn points_per_generator(&self) -> BigUint {
        let q = BigUint::from(self.field().q() as u64);
        (q.pow(self.rank as u32) - 1u32) / (q - 1u32)
    }

    /// Closed-form generator count: ∏_{i=0}^{r−1} (q^{e+i} + 1).
    pub fn expected_generator_count(&self) -> BigUint {
        let f = self.field();
        let (p, h) = (f.p() as u64, f.h());
        let mut acc = BigUint::from(1u32);
        for i in 0..self.rank {
            acc *= pow_half(p, h, self.twoe as i64 + 2 * i as i64) + 1u32;
        }
        acc
    }

    /// The ovoid number q^{r−1+e} + 1.
    pub fn ovoid_number(&self) -> BigUint {
        let f = self.field();
        pow_half(f.p() as u64, f.h(), 2 * (self.rank as i64 - 1) + self.twoe as i64) + 1u32
    }

    /// Greedy maximal totally singular chain starting at a given point;
    /// returns its length (= rank for nondegenerate polar spaces).
    pub fn greedy_maximal_chain_len(&self, start: usize) -> usize {
        self.random_maximal_chain_len(start, |cands: &[usize]| cands[0])
    }

    /// Maximal chain where ties are broken by an arbitrary selector over the
    /// current candidate list; used for randomized no-short-maximals checks.
    pub fn random_maximal_chain_len(
        &self,
        start: usize,
        mut pick: impl FnMut(&[usize]) -> usize,
    ) -> usize {
        let n = self.n();
        let mut chain = vec![start];
        let mut span = BitSet::new(n);
        span.insert(start);
        let mut cand = self.adjacency[start].clone();
        loop {
            let choices: Vec<usize> = cand.iter().filter(|c| !span.contains(*c)).collect();
            if choices.is_empty() {
                break;
            }
            let c = pick(&choices);
            self.extend_span(&mut span, c);
            chain.push(c);
            cand.and_assign(&self.adjacency[c]);
        }
        chain.len()
    }

    /// Inserts into `span` every point of ⟨span ∪ {c}⟩, given that `span`
    /// currently holds exactly the points of a totally singular subspace
    /// collinear with `c`.
    fn extend_span(&self, span: &mut BitSet, c: usize) {
        let f = self.field();
        let old: Vec<usize> = span.iter().collect();
        span.insert(c);
        for s in old {
            for lam in 1..f.q() {
                let v = linalg::vec_add_scaled(f, &self.points[s].0, El(lam), &self.points[c].0);
                let idx = self
                    .index_of_vector(&v)
                    .expect("span of pairwise-collinear singular points is totally singular");
                span.insert(idx);
            }
        }
    }

    /// All generators (maximal totally singular subspaces), enumerated once
    /// by canonical-chain DFS and cached. Order is deterministic:
    /// lexicographic in the canonical chains.
    pub fn generators(&self) -> &[Subspace] {
        self.generators.get_or_init(|| {
            let mut out = Vec::new();
            let n = self.n();
            let mut chain: Vec<usize> = Vec::new();
            let mut span = BitSet::new(n);
            self.enumerate_chains(&mut chain, &mut span, &mut |chain| {
                let rows: Vec<Vec<El>> = chain.iter().map(|&i| self.points[i].0.clone()).collect();
                out.push(Subspace::from_generators(self.field(), &rows));
            });
            let expected = self.expected_generator_count();
            assert_eq!(
                BigUint::from(out.len()),
                expected,
                "generator enumeration disagrees with the closed-form count"
            );
            out
        })
    }

    /// Canonical-chain DFS. A chain b_1 < b_2 < ... is canonical when each
    /// b_i is the least new span point it introduces; every totally singular
    /// subspace has exactly one canonical chain, so leaves at depth `rank`
    /// are exactly the generators, each visited once.
    fn enumerate_chains(
        &self,
        chain: &mut Vec<usize>,
        span: &mut BitSet,
        emit: &mut impl FnMut(&[usize]),
    ) {
        if chain.len() == self.rank {
            emit(chain);
            return;
        }
        let n = self.n();
        let f = self.field();
        let start = chain.last().map_or(0, |&b| b + 1);
        let mut cand = BitSet::full(n);
        for &b in chain.iter() {
            cand.and_assign(&self.adjacency[b]);
        }
        'cand: for c in cand.iter() {
            if c < start || span.contains(c) {
                continue;
            }
            // compute the new span points; canonicity requires c to be their minimum
            let mut new_pts = vec![c];
            for s in span.iter() {
                for lam in 1..f.q() {
                    let v = linalg::vec_add_scaled(f, &self.points[s].0, El(lam), &self.points[c].0);
                    let idx = self
                        .index_of_vector(&v)
                        .expect("span stays totally singular");
                    if idx < c {
                        continue 'cand;
                    }
                    new_pts.push(idx);
                }
            }
            for &x in &new_pts {
                span.insert(x);
            }
            chain.push(c);
            self.enumerate_chains(chain, span, emit);
            chain.pop();
            for &x in &new_pts {
                span.remove(x);
            }
        }
    }

    /// Point bitset of each generator, aligned with [`Self::generators`].
    pub fn generator_point_sets(&self) -> &[BitSet] {
        self.generator_points.get_or_init(|| {
            self.generators()
                .iter()
                .map(|g| self.subspace_point_set(g))
                .collect()
        })
    }

    /// Bitset of the (singular) points lying in a subspace.
    pub fn subspace_point_set(&self, s: &Subspace) -> BitSet {
        let mut b = BitSet::new(self.n());
        for p in s.points(self.field()) {
            if let Some(i) = self.point_index(&p) {
                b.insert(i);
            }
        }
        b
    }

    /// True iff the set meets every generator in exactly one point.
    pub fn is_ovoid(&self, set: &BitSet) -> bool {
        self.generator_point_sets()
            .iter()
            .all(|g| g.intersection_count(set) == 1)
    }

    /// True iff the set is pairwise non-collinear.
    pub fn is_coclique(&self, set: &BitSet) -> bool {
        set.iter().all(|i| self.adjacency[i].is_disjoint_from(set))
    }

    /// The perp of a point as a bitset: the point together with its
    /// collinearity neighborhood.
    pub fn perp_set(&self, i: usize) -> BitSet {
        let mut b = self.adjacency[i].clone();
        b.insert(i);
        b
    }

    /// Quotient of the space at a singular point (rank ≥ 2 required).
    pub fn quotient_at_point(self: &Arc<Self>, x: usize) -> Result<Quotient> {
        let s = Subspace::from_generators(self.field(), &[self.points[x].0.clone()]);
        self.quotient_by_subspace(&s)
    }

    /// Quotient by a totally singular subspace S: the polar space S^⊥/S of
    /// the same family, of rank r − dim(S).
    pub fn quotient_by_subspace(self: &Arc<Self>, s: &Subspace) -> Result<Quotient> {
        let f = self.field().clone();
        let sdim = s.vdim();
        if sdim == 0 {
            return Err(Error::Precondition("quotient by the empty subspace".into()));
        }
        if !self.form.is_totally_singular(s) {
            return Err(Error::Precondition(
                "quotient subspace must be totally singular".into(),
            ));
        }
        if self.rank < sdim + 1 {
            return Err(Error::Precondition(format!(
                "quotient needs rank ≥ {}, space has rank {}",
                sdim + 1,
                self.rank
            )));
        }
        let perp = self.form.perp(s);
        debug_assert_eq!(perp.vdim(), self.vdim() - sdim);
        // extend the S-basis to a basis of S^⊥; the added rows are the
        // complement coordinates of the quotient
        let mut stacked = s.basis().clone();
        let mut comp_rows: Vec<Vec<El>> = Vec::new();
        for i in 0..perp.basis().rows {
            let cand = perp.basis().row(i).to_vec();
            let trial = stacked.vstack(&Matrix::from_rows(&[cand.clone()]));
            if trial.rank(&f) > stacked.rows {
                stacked = stacked.vstack(&Matrix::from_rows(&[cand.clone()]));
                comp_rows.push(cand);
            }
        }
        let comp = Matrix::from_rows(&comp_rows);
        debug_assert_eq!(comp.rows, self.vdim() - 2 * sdim);
        let qform = self.form.restrict(&comp)?;
        let qspace = PolarSpace::build(qform)?;
        if qspace.family() != self.family || qspace.rank() != self.rank - sdim {
            return Err(Error::Construction(format!(
                "quotient built {:?}, expected {} of rank {}",
                qspace,
                self.family.symbol(),
                self.rank - sdim
            )));
        }
        // solve against [comp; S-basis]: the first comp.rows coordinates of a
        // solution express a vector of S^⊥ modulo S
        let solver = comp.vstack(s.basis());
        Ok(Quotient {
            parent: self.clone(),
            sub: s.clone(),
            space: qspace,
            comp,
            solver,
        })
    }

    /// Projects an ovoid through an off-ovoid point X to an ovoid of the
    /// quotient at X (rank ≥ 3 required).
    pub fn project_ovoid(self: &Arc<Self>, ovoid: &BitSet, x: usize) -> Result<(Quotient, BitSet)> {
        if self.rank < 3 {
            return Err(Error::Precondition(format!(
                "ovoid projection needs rank ≥ 3, space has rank {}",
                self.rank
            )));
        }
        if ovoid.contains(x) {
            return Err(Error::Precondition(
                "projection point must lie off the ovoid".into(),
            ));
        }
        if !self.is_ovoid(ovoid) {
            return Err(Error::Precondition("input set is not an ovoid".into()));
        }
        let quo = self.quotient_at_point(x)?;
        let mut image = BitSet::new(quo.space.n());
        for y in self.adjacency[x].intersection(ovoid).iter() {
            let idx = quo
                .project_point_index(y)
                .ok_or_else(|| Error::Construction("projection of ovoid point failed".into()))?;
            image.insert(idx);
        }
        if !quo.space.is_ovoid(&image) {
            return Err(Error::Construction(
                "projected set is not an ovoid of the quotient".into(),
            ));
        }
        Ok((quo, image))
    }
}

/// Closed-form number of points (q^{r−1+e} + 1)(q^r − 1)/(q − 1).
pub fn expected_point_count(f: &Field, rank: usize, twoe: u32) -> BigUint {
    let (p, h) = (f.p() as u64, f.h());
    let q = BigUint::from(f.q() as u64);
    let a = pow_half(p, h, 2 * (rank as i64 - 1) + twoe as i64) + 1u32;
    let b = (q.clone().pow(rank as u32) - 1u32) / (q - 1u32);
    a * b
}

/// Decomposes a prime power, rejecting other integers.
pub fn factor_prime_power(q0: u32) -> Result<(u32, u32)> {
    if q0 < 2 {
        return Err(Error::InvalidParameter(format!(
            "{q0} is not a prime power"
        )));
    }
    let mut p = 0;
    for d in 2.. {
        if d * d > q0 {
            p = q0; // q0 itself prime
            break;
        }
        if q0 % d == 0 {
            p = d;
            break;
        }
    }
    let mut a = 0;
    let mut rest = q0;
    while rest % p == 0 {
        rest /= p;
        a += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidParameter(format!(
            "{q0} is not a prime power"
        )));
    }
    Ok((p, a))
}

/// A quotient polar space S^⊥/S together with the projection map.
pub struct Quotient {
    pub parent: Arc<PolarSpace>,
    pub sub: Subspace,
    pub space: Arc<PolarSpace>,
    comp: Matrix,
    solver: Matrix,
}

impl Quotient {
    /// Complement basis rows: quotient coordinates expressed in the ambient
    /// space.
    pub fn complement(&self) -> &Matrix {
        &self.comp
    }

    /// Lifts a quotient point to an ambient vector.
    pub fn lift(&self, quotient_index: usize) -> Vec<El> {
        let p = self.space.point(quotient_index);
        self.comp.apply_row(self.parent.field(), &p.0)
    }

    /// Projects an ambient vector lying in S^⊥ ∖ S; returns the quotient
    /// point index, or None when the vector is outside S^⊥ or inside S.
    pub fn project_vector(&self, v: &[El]) -> Option<usize> {
        let f = self.parent.field();
        let x = self.solver.solve_left(f, v)?;
        let c = &x[..self.comp.rows];
        if linalg::vec_is_zero(c) {
            return None;
        }
        let p = ProjPoint::normalize(f, c)?;
        self.space.point_index(&p)
    }

    /// Projects an ambient point by index.
    pub fn project_point_index(&self, i: usize) -> Option<usize> {
        self.project_vector(&self.parent.point(i).0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn space(family: PolarFamily, vdim: usize, q0: u32) -> Arc<PolarSpace> {
        PolarSpace::standard(family, vdim, q0).unwrap()
    }

    #[test]
    fn point_counts_match_closed_forms() {
        let cases = [
            (PolarFamily::W, 4, 2, 15),
            (PolarFamily::W, 6, 2, 63),
            (PolarFamily::Q, 5, 2, 15),
            (PolarFamily::Q, 5, 3, 40),
            (PolarFamily::QPlus, 6, 2, 35),
            (PolarFamily::QMinus, 6, 2, 27),
            (PolarFamily::QPlus, 8, 2, 135),
            (PolarFamily::H, 4, 2, 45),
            (PolarFamily::H, 6, 2, 693),
            (PolarFamily::H, 4, 3, 280),
        ];
        for (fam, vdim, q0, n) in cases {
            let s = space(fam, vdim, q0);
            assert_eq!(s.n(), n, "{s:?}");
            assert_eq!(s.expected_n(), BigUint::from(n as u64), "{s:?}");
        }
    }

    #[test]
    fn big_hyperbolic_point_count() {
        let s = space(PolarFamily::QPlus, 10, 2);
        assert_eq!(s.n(), 527);
        assert_eq!(s.rank(), 5);
        assert_eq!(s.ovoid_number(), BigUint::from(17u32));
    }

    #[test]
    fn generator_counts_match_closed_forms() {
        let cases = [
            (PolarFamily::W, 4, 2, 15u64),
            (PolarFamily::H, 4, 2, 27),
            (PolarFamily::QPlus, 6, 2, 30),
            (PolarFamily::QMinus, 6, 2, 45),
            (PolarFamily::Q, 7, 2, 135),
            (PolarFamily::QPlus, 8, 2, 270),
            (PolarFamily::H, 6, 2, 891),
        ];
        for (fam, vdim, q0, count) in cases {
            let s = space(fam, vdim, q0);
            assert_eq!(s.generators().len() as u64, count, "{s:?}");
            for g in s.generators() {
                assert_eq!(g.vdim(), s.rank());
                assert!(s.form().is_totally_singular(g));
            }
            // duplicate-free
            let mut seen = std::collections::HashSet::new();
            for g in s.generators() {
                assert!(seen.insert(g.basis().clone()));
            }
        }
    }

    #[test]
    fn generators_have_uniform_point_count() {
        let s = space(PolarFamily::H, 6, 2);
        let per = s.points_per_generator();
        assert_eq!(per, BigUint::from(21u32));
        for g in s.generator_point_sets() {
            assert_eq!(BigUint::from(g.count()), per);
        }
    }

    #[test]
    fn adjacency_is_symmetric_and_irreflexive() {
        for s in [
            space(PolarFamily::W, 4, 2),
            space(PolarFamily::H, 4, 2),
            space(PolarFamily::QMinus, 6, 2),
        ] {
            for i in 0..s.n() {
                assert!(!s.adjacent(i, i));
                for j in s.neighbors(i).iter() {
                    assert!(s.adjacent(j, i));
                }
            }
        }
    }

    #[test]
    fn w12_quotient_and_rank1_generators() {
        let s = space(PolarFamily::W, 4, 2);
        let quo = s.quotient_at_point(0).unwrap();
        assert_eq!(quo.space.n(), 3);
        assert_eq!(quo.space.rank(), 1);
        assert_eq!(quo.space.family(), PolarFamily::W);
        // rank-1 generators are the points themselves
        assert_eq!(quo.space.generators().len(), 3);
        // no collinearity in a rank-1 space
        for i in 0..3 {
            assert_eq!(quo.space.degree(i), 0);
        }
    }

    #[test]
    fn hermitian_quotient_is_smaller_hermitian() {
        let s = space(PolarFamily::H, 6, 2);
        let quo = s.quotient_at_point(17).unwrap();
        assert_eq!(quo.space.family(), PolarFamily::H);
        assert_eq!(quo.space.n(), 45);
        assert_eq!(quo.space.rank(), 2);
    }

    #[test]
    fn hyperbolic_quotient_chain() {
        let s = space(PolarFamily::QPlus, 10, 2);
        let quo = s.quotient_at_point(3).unwrap();
        assert_eq!(quo.space.family(), PolarFamily::QPlus);
        assert_eq!(quo.space.n(), 135);
        assert_eq!(quo.space.rank(), 4);
    }

    #[test]
    fn projection_maps_ts_lines_through_x_to_quotient_points() {
        let s = space(PolarFamily::W, 6, 2);
        let x = 5;
        let quo = s.quotient_at_point(x).unwrap();
        // every neighbor projects; fibers are exactly the punctured totally
        // singular lines through x
        let f = s.field();
        let mut fibers: std::collections::HashMap<usize, Vec<usize>> = Default::default();
        for y in s.neighbors(x).iter() {
            let img = quo.project_point_index(y).expect("neighbor must project");
            fibers.entry(img).or_default().push(y);
        }
        assert_eq!(fibers.len(), quo.space.n());
        for (_, fiber) in fibers {
            assert_eq!(fiber.len(), f.q() as usize);
            // fiber together with x is a line: all points collinear with each other
            for &a in &fiber {
                for &b in &fiber {
                    if a != b {
                        assert!(s.adjacent(a, b));
                    }
                }
            }
        }
        // points not collinear with x do not project
        for y in 0..s.n() {
            if y != x && !s.adjacent(x, y) {
                assert!(quo.project_point_index(y).is_none());
            }
        }
        assert!(quo.project_point_index(x).is_none());
    }

    #[test]
    fn no_short_maximals_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for s in [
            space(PolarFamily::W, 4, 2),
            space(PolarFamily::Q, 5, 3),
            space(PolarFamily::QMinus, 6, 2),
            space(PolarFamily::H, 4, 3),
            space(PolarFamily::QPlus, 8, 2),
        ] {
            for _ in 0..1000 {
                let start = rng.gen_range(0..s.n());
                let len = s.random_maximal_chain_len(start, |cands| {
                    cands[rng.gen_range(0..cands.len())]
                });
                assert_eq!(len, s.rank(), "{s:?}");
            }
        }
    }

    #[test]
    fn degenerate_forms_are_rejected() {
        let f = crate::field::Field::new(2, 1).unwrap();
        // rank-deficient quadratic form x0*x1 in 3 variables: radical point (0,0,1)
        let mut quad = Matrix::zero(3, 3);
        quad.set(0, 1, El::ONE);
        let form = FormSpec::quadratic_with_coeffs(f, quad, None).unwrap();
        assert!(matches!(
            PolarSpace::build(form),
            Err(Error::DegenerateForm(_))
        ));
    }

    #[test]
    fn quotient_of_quotient_matches_line_quotient() {
        // double projection from two collinear points agrees with the
        // quotient by the spanned line: identical fibers, matching adjacency
        let s = space(PolarFamily::QPlus, 10, 2);
        let x = 0;
        let y = s.neighbors(x).first().unwrap();
        let f = s.field();
        let line = Subspace::from_generators(
            f,
            &[s.point(x).0.clone(), s.point(y).0.clone()],
        );
        let by_line = s.quotient_by_subspace(&line).unwrap();
        let first = s.quotient_at_point(x).unwrap();
        let y1 = first.project_point_index(y).unwrap();
        let second = first.space.quotient_at_point(y1).unwrap();
        assert_eq!(by_line.space.n(), second.space.n());
        assert_eq!(by_line.space.family(), second.space.family());

        // compare the two projections on ambient points: equal fibers and
        // isomorphic images under the induced identification
        let mut pairing: std::collections::HashMap<usize, usize> = Default::default();
        for z in 0..s.n() {
            let img_line = by_line.project_point_index(z);
            let img_double = first
                .project_point_index(z)
                .and_then(|z1| second.project_point_index(z1));
            assert_eq!(img_line.is_some(), img_double.is_some(), "point {z}");
            if let (Some(a), Some(b)) = (img_line, img_double) {
                if let Some(&prev) = pairing.get(&a) {
                    assert_eq!(prev, b, "fibers disagree at ambient point {z}");
                } else {
                    pairing.insert(a, b);
                }
            }
        }
        assert_eq!(pairing.len(), by_line.space.n());
        // the pairing is an isomorphism of collinearity graphs
        let pairs: Vec<(usize, usize)> = pairing.into_iter().collect();
        for &(a1, b1) in &pairs {
            for &(a2, b2) in &pairs {
                assert_eq!(
                    by_line.space.adjacent(a1, a2),
                    second.space.adjacent(b1, b2)
                );
            }
        }
    }

    #[test]
    fn prime_power_factorization() {
        assert_eq!(factor_prime_power(2).unwrap(), (2, 1));
        assert_eq!(factor_prime_power(9).unwrap(), (3, 2));
        assert_eq!(factor_prime_power(8).unwrap(), (2, 3));
        assert!(factor_prime_power(6).is_err());
        assert!(factor_prime_power(1).is_err());
        assert!(factor_prime_power(12).is_err());
    }
}
