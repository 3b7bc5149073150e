//! Distinguished subgeometries: nondegenerate sections as polar spaces in
//! their own right, subfield (Baer) symplectic models inside Hermitian
//! spaces, elliptic quadrics imposed on totally singular solids, and the
//! Hermitian plane-section classifier.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::El;
use crate::geometry::{FormKind, FormSpec, QuadType, Subspace};
use crate::linalg::Matrix;
use crate::polar::{PolarFamily, PolarSpace};
use std::collections::HashMap;
use std::sync::Arc;

/// A nondegenerate section of a polar space, materialized as a polar space
/// on the section's own coordinates together with the point maps.
pub struct Section {
    pub parent: Arc<PolarSpace>,
    /// Basis rows of the carrier subspace, in parent coordinates.
    pub carrier: Matrix,
    pub space: Arc<PolarSpace>,
    to_parent: Vec<usize>,
    from_parent: HashMap<usize, usize>,
}

impl Section {
    /// Restricts the parent's form to the row space of `carrier` and builds
    /// the resulting polar space. The restriction must be nondegenerate with
    /// Witt index ≥ 1.
    pub fn restrict(parent: &Arc<PolarSpace>, carrier: Matrix) -> Result<Section> {
        let form = parent.form().restrict(&carrier)?;
        let space = PolarSpace::build(form)?;
        let f = parent.field();
        let mut to_parent = Vec::with_capacity(space.n());
        let mut from_parent = HashMap::new();
        for (local, p) in space.points().iter().enumerate() {
            let ambient = carrier.apply_row(f, &p.0);
            let idx = parent.index_of_vector(&ambient).ok_or_else(|| {
                Error::Construction("section point is not singular in the parent".into())
            })?;
            to_parent.push(idx);
            from_parent.insert(idx, local);
        }
        Ok(Section {
            parent: parent.clone(),
            carrier,
            space,
            to_parent,
            from_parent,
        })
    }

    /// Section of the perp of a set of parent points (their common
    /// hyperplane intersection).
    pub fn of_common_perp(parent: &Arc<PolarSpace>, pts: &[usize]) -> Result<Section> {
        let f = parent.field();
        let mut sub: Option<Subspace> = None;
        for &p in pts {
            let perp = parent
                .form()
                .perp(&Subspace::from_generators(f, &[parent.point(p).0.clone()]));
            sub = Some(match sub {
                None => perp,
                Some(s) => s.intersect(f, &perp),
            });
        }
        let sub = sub.ok_or_else(|| Error::Precondition("no points given".into()))?;
        Section::restrict(parent, sub.basis().clone())
    }

    pub fn to_parent_index(&self, local: usize) -> usize {
        self.to_parent[local]
    }

    pub fn from_parent_index(&self, ambient: usize) -> Option<usize> {
        self.from_parent.get(&ambient).copied()
    }

    /// All section points as a bitset of parent indices.
    pub fn parent_point_set(&self) -> BitSet {
        let mut b = BitSet::new(self.parent.n());
        for &i in &self.to_parent {
            b.insert(i);
        }
        b
    }

    /// Maps a subspace given in section coordinates to parent coordinates.
    pub fn subspace_to_parent(&self, s: &Subspace) -> Subspace {
        let rows: Vec<Vec<El>> = (0..s.basis().rows)
            .map(|i| self.carrier.apply_row(self.parent.field(), s.basis().row(i)))
            .collect();
        Subspace::from_generators(self.parent.field(), &rows)
    }
}

/// The subfield symplectic model: a Hermitian space over GF(q²) whose Gram
/// matrix restricts to a symplectic form on the GF(q)-rational points, and
/// the set of those points — an embedded W(2r−1, q).
pub fn baer_symplectic_model(rank: usize, q0: u32) -> Result<(Arc<PolarSpace>, BitSet)> {
    if rank == 0 {
        return Err(Error::InvalidParameter("rank must be positive".into()));
    }
    let (p, a) = crate::polar::factor_prime_power(q0)?;
    let field = crate::field::Field::new(p, 2 * a)?;
    let dim = 2 * rank;
    // symplectic-shaped Hermitian Gram: in characteristic 2 the alternating
    // block matrix J is its own conjugate transpose; in odd characteristic
    // scale J by a trace-zero α (conj(α) = −α)
    let alpha = if p == 2 {
        El::ONE
    } else {
        field
            .elements()
            .find(|&x| !x.is_zero() && field.conj(x) == field.neg(x))
            .expect("trace-zero elements exist in every quadratic extension")
    };
    let mut gram = Matrix::zero(dim, dim);
    for i in (0..dim).step_by(2) {
        gram.set(i, i + 1, alpha);
        gram.set(i + 1, i, field.neg(alpha));
    }
    let form = FormSpec::hermitian_with_gram(field.clone(), gram)?;
    let space = PolarSpace::build(form)?;
    if space.family() != PolarFamily::H || space.rank() != rank {
        return Err(Error::Construction(
            "symplectic-shaped Gram did not produce the Hermitian space".into(),
        ));
    }
    // GF(q)-rational points: normalized coordinates fixed by conjugation;
    // all of them are isotropic for the alternating subfield form
    let mut set = BitSet::new(space.n());
    for (i, pt) in space.points().iter().enumerate() {
        if pt.coords().iter().all(|&c| field.conj(c) == c) {
            set.insert(i);
        }
    }
    let expected = {
        let q = q0 as u64;
        ((q.pow(dim as u32) - 1) / (q - 1)) as usize
    };
    if set.count() != expected {
        return Err(Error::Construction(format!(
            "subfield point count {} ≠ expected {}",
            set.count(),
            expected
        )));
    }
    // isomorphism-type check: the induced collinearity graph has the
    // symplectic space's strongly regular parameters (rank ≥ 2)
    if rank >= 2 {
        let measured = crate::srg::params_of_induced(&space, &set)?;
        let base = crate::field::Field::new(p, a)?;
        let table = crate::srg::params_from_table(&base, rank, 2)?;
        if measured != table {
            return Err(Error::Construction(format!(
                "induced graph on subfield points is {measured}, expected {table}"
            )));
        }
    }
    Ok((space, set))
}

/// An elliptic quadric imposed on a totally singular solid of a host polar
/// space, with its tangent planes.
pub struct EllipticInSolid {
    /// The solid, in host coordinates.
    pub solid: Subspace,
    /// The imposed nondegenerate elliptic form on the solid's local
    /// coordinates.
    pub local_form: FormSpec,
    /// Host point indices of the q²+1 quadric points.
    pub quadric: Vec<usize>,
    /// Tangent planes at the quadric points (host coordinates), aligned
    /// with `quadric`.
    pub tangent_planes: Vec<Subspace>,
}

/// Imposes the standard elliptic form on the local coordinates of a totally
/// singular solid (vector dimension 4) and returns the quadric with its
/// tangent planes. The host form vanishes identically on the solid, so the
/// imposed structure is an independent choice — the lexicographically least
/// standard one.
pub fn elliptic_in_solid(host: &Arc<PolarSpace>, solid: &Subspace) -> Result<EllipticInSolid> {
    if solid.vdim() != 4 {
        return Err(Error::Precondition(format!(
            "elliptic quadric needs a solid (vector dimension 4), got {}",
            solid.vdim()
        )));
    }
    if !host.form().is_totally_singular(solid) {
        return Err(Error::Precondition(
            "solid must be totally singular in the host".into(),
        ));
    }
    let f = host.field();
    let local_form = FormSpec::quadratic(f.clone(), 4, QuadType::Elliptic)?;
    let q = f.q() as usize;
    let mut quadric = Vec::new();
    let mut tangent_planes = Vec::new();
    for local in local_form.singular_points() {
        let ambient = solid.basis().apply_row(f, &local.0);
        let idx = host
            .index_of_vector(&ambient)
            .expect("solid points are singular in the host");
        quadric.push(idx);
        // tangent plane: the perp of the tangency point under the imposed
        // form, carried to host coordinates
        let local_plane = local_form.perp_point(&local);
        debug_assert_eq!(local_plane.vdim(), 3);
        let rows: Vec<Vec<El>> = (0..3)
            .map(|i| solid.basis().apply_row(f, local_plane.basis().row(i)))
            .collect();
        tangent_planes.push(Subspace::from_generators(f, &rows));
    }
    if quadric.len() != q * q + 1 {
        return Err(Error::Construction(format!(
            "imposed elliptic quadric has {} points, expected q²+1 = {}",
            quadric.len(),
            q * q + 1
        )));
    }
    // each tangent plane meets the quadric exactly in its tangency point
    for (i, plane) in tangent_planes.iter().enumerate() {
        for (j, &pt) in quadric.iter().enumerate() {
            let inside = plane.contains_point(f, host.point(pt));
            if inside != (i == j) {
                return Err(Error::Construction(
                    "tangent plane meets the quadric away from its tangency point".into(),
                ));
            }
        }
    }
    Ok(EllipticInSolid {
        solid: solid.clone(),
        local_form,
        quadric,
        tangent_planes,
    })
}

/// Isomorphism type of a plane section of a Hermitian polar space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum PlaneKind {
    /// Nondegenerate Hermitian curve, q³+1 singular points.
    Nondegenerate,
    /// Cone: point vertex over a Baer subline, 1 + (q+1)q² singular points.
    Cone,
    /// Totally singular plane (a generator when the rank is 3).
    TotallySingular,
    /// Radical is a full line; the singular points are exactly that line.
    LineVertex,
}

/// A classified plane section.
pub struct PlaneSection {
    pub kind: PlaneKind,
    /// Host indices of the singular points in the plane.
    pub singular: BitSet,
    /// The cone vertex (host index), present only for [`PlaneKind::Cone`].
    pub vertex: Option<usize>,
}

/// Classifies a projective plane (vector dimension 3) of the ambient space
/// of a Hermitian polar space by the rank of the restricted form.
pub fn classify_plane(space: &Arc<PolarSpace>, plane: &Subspace) -> Result<PlaneSection> {
    if space.form().kind != FormKind::Hermitian {
        return Err(Error::Precondition(
            "plane classification requires a Hermitian space".into(),
        ));
    }
    if plane.vdim() != 3 {
        return Err(Error::Precondition(format!(
            "expected a plane (vector dimension 3), got {}",
            plane.vdim()
        )));
    }
    let f = space.field();
    let restricted = space.form().restrict(plane.basis())?;
    let rank = restricted.gram().rank(f);
    let mut singular = BitSet::new(space.n());
    for p in plane.points(f) {
        if let Some(i) = space.point_index(&p) {
            singular.insert(i);
        }
    }
    let (kind, vertex) = match rank {
        3 => (PlaneKind::Nondegenerate, None),
        2 => {
            let rad = restricted.radical();
            debug_assert_eq!(rad.vdim(), 1);
            let ambient = plane.basis().apply_row(f, rad.basis().row(0));
            let v = space
                .index_of_vector(&ambient)
                .ok_or_else(|| Error::Construction("cone vertex is not singular".into()))?;
            (PlaneKind::Cone, Some(v))
        }
        1 => (PlaneKind::LineVertex, None),
        0 => (PlaneKind::TotallySingular, None),
        _ => unreachable!("rank of a 3×3 matrix"),
    };
    // the singular-point count pins the type independently
    let q2 = f.q() as usize; // coordinate field order q²
    let q = (f.p() as usize).pow(f.h() / 2);
    let expected = match kind {
        PlaneKind::Nondegenerate => q * q * q + 1,
        PlaneKind::Cone => 1 + (q + 1) * q * q,
        PlaneKind::TotallySingular => q2 * q2 + q2 + 1,
        PlaneKind::LineVertex => q2 + 1,
    };
    if singular.count() != expected {
        return Err(Error::Construction(format!(
            "{kind:?} plane has {} singular points, expected {expected}",
            singular.count()
        )));
    }
    Ok(PlaneSection {
        kind,
        singular,
        vertex,
    })
}

/// Convenience: the plane spanned by three host points.
pub fn plane_through(space: &PolarSpace, a: usize, b: usize, c: usize) -> Subspace {
    let f = space.field();
    Subspace::from_points(
        f,
        &[
            space.point(a).clone(),
            space.point(b).clone(),
            space.point(c).clone(),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ProjPoint;

    #[test]
    fn hyperbolic_section_of_two_nonperp_points() {
        let s = PolarSpace::standard(PolarFamily::QPlus, 10, 2).unwrap();
        let p1 = 0;
        let p2 = (0..s.n())
            .find(|&x| x != p1 && !s.adjacent(p1, x))
            .unwrap();
        let sec = Section::of_common_perp(&s, &[p1, p2]).unwrap();
        assert_eq!(sec.space.family(), PolarFamily::QPlus);
        assert_eq!(sec.space.n(), 135);
        assert_eq!(sec.space.rank(), 4);
        // point maps are mutually inverse and adjacency is preserved
        for l in (0..sec.space.n()).step_by(7) {
            let g = sec.to_parent_index(l);
            assert_eq!(sec.from_parent_index(g), Some(l));
            for l2 in (0..sec.space.n()).step_by(11) {
                let g2 = sec.to_parent_index(l2);
                assert_eq!(sec.space.adjacent(l, l2), s.adjacent(g, g2));
            }
        }
    }

    #[test]
    fn baer_symplectic_w32_in_h34() {
        let (space, set) = baer_symplectic_model(2, 2).unwrap();
        assert_eq!(space.n(), 45);
        assert_eq!(set.count(), 15);
        let v = crate::intriguing::baer_symplectic_tight(&space, &set).unwrap();
        match crate::intriguing::classify(&v).unwrap() {
            crate::intriguing::Classification::WeightedTight { i } => {
                assert_eq!(i, num::BigRational::from_integer(3.into()))
            }
            other => panic!("expected 3-tight, got {other:?}"),
        }
    }

    #[test]
    fn baer_symplectic_w52_in_h54() {
        let (space, set) = baer_symplectic_model(3, 2).unwrap();
        assert_eq!(space.n(), 693);
        assert_eq!(set.count(), 63);
        // jψ^T = 3 · 21 = 63 for the (q+1)-tight characteristic vector
        let v = crate::intriguing::baer_symplectic_tight(&space, &set).unwrap();
        assert_eq!(v.total(), num::BigRational::from_integer(63.into()));
    }

    #[test]
    fn baer_symplectic_odd_characteristic() {
        let (space, set) = baer_symplectic_model(2, 3).unwrap();
        assert_eq!(space.n(), 280);
        assert_eq!(set.count(), 40);
    }

    #[test]
    fn elliptic_quadric_in_a_solid() {
        let s = PolarSpace::standard(PolarFamily::QPlus, 8, 2).unwrap();
        let solid = s.generators()[0].clone();
        let e = elliptic_in_solid(&s, &solid).unwrap();
        assert_eq!(e.quadric.len(), 5);
        assert_eq!(e.tangent_planes.len(), 5);
        let f = s.field();
        for plane in &e.tangent_planes {
            assert_eq!(plane.vdim(), 3);
            // planes lie inside the solid
            for i in 0..plane.basis().rows {
                assert!(solid.contains_vector(f, plane.basis().row(i)));
            }
        }
        // quadric points are pairwise non-collinear under the imposed form:
        // check via the local coordinates directly
        let locals: Vec<ProjPoint> = e.local_form.singular_points();
        for (i, a) in locals.iter().enumerate() {
            for b in locals.iter().skip(i + 1) {
                assert!(!e.local_form.orthogonal(&a.0, &b.0));
            }
        }
        // a non-totally-singular solid is rejected
        let rows: Vec<Vec<El>> = (0..4)
            .map(|i| {
                let mut v = vec![El::ZERO; 8];
                v[i] = El::ONE;
                v
            })
            .collect();
        let bad = Subspace::from_generators(f, &rows);
        assert_eq!(bad.vdim(), 4);
        assert!(elliptic_in_solid(&s, &bad).is_err());
    }

    #[test]
    fn plane_classification_covers_all_kinds() {
        let s = PolarSpace::standard(PolarFamily::H, 6, 2).unwrap();
        let f = s.field();
        // a generator is a totally singular plane with 21 points
        let gen = s.generators()[0].clone();
        let sec = classify_plane(&s, &gen).unwrap();
        assert_eq!(sec.kind, PlaneKind::TotallySingular);
        assert_eq!(sec.singular.count(), 21);
        // the coordinate plane on the first three axes is nondegenerate
        let rows: Vec<Vec<El>> = (0..3)
            .map(|i| {
                let mut v = vec![El::ZERO; 6];
                v[i] = El::ONE;
                v
            })
            .collect();
        let coord = Subspace::from_generators(f, &rows);
        let sec = classify_plane(&s, &coord).unwrap();
        assert_eq!(sec.kind, PlaneKind::Nondegenerate);
        assert_eq!(sec.singular.count(), 9);
        assert!(sec.vertex.is_none());
        // scan planes through singular point triples until a cone shows up;
        // counts are verified inside classify_plane
        let mut seen_cone = false;
        'outer: for a in 0..6 {
            for b in 7..20 {
                for c in 21..60 {
                    let plane = plane_through(&s, a, b, c);
                    if plane.vdim() != 3 {
                        continue;
                    }
                    let sec = classify_plane(&s, &plane).unwrap();
                    if sec.kind == PlaneKind::Cone {
                        seen_cone = true;
                        let v = sec.vertex.unwrap();
                        assert!(sec.singular.contains(v));
                        assert_eq!(sec.singular.count(), 13);
                        break 'outer;
                    }
                }
            }
        }
        assert!(seen_cone, "no cone plane found in the scan");
        // a line-vertex plane is never spanned by singular points: build one
        // as ⟨totally singular line, non-singular vector from its perp⟩
        let a = 0;
        let b = s.neighbors(a).iter().next().unwrap();
        let line = Subspace::from_points(f, &[s.point(a).clone(), s.point(b).clone()]);
        let perp = s.form().perp(&line);
        let extra = perp
            .points(f)
            .into_iter()
            .find(|p| !s.form().is_singular_vector(&p.0))
            .expect("the perp of a line contains non-singular points");
        let plane = Subspace::from_generators(
            f,
            &[
                s.point(a).0.clone(),
                s.point(b).0.clone(),
                extra.0.clone(),
            ],
        );
        assert_eq!(plane.vdim(), 3);
        let sec = classify_plane(&s, &plane).unwrap();
        assert_eq!(sec.kind, PlaneKind::LineVertex);
        assert_eq!(sec.singular.count(), 5);
        // the five singular points are exactly the line
        for p in line.points(f) {
            assert!(sec.singular.contains(s.point_index(&p).unwrap()));
        }
    }

    #[test]
    fn plane_classifier_rejects_non_hermitian() {
        let s = PolarSpace::standard(PolarFamily::W, 6, 2).unwrap();
        let gen = s.generators()[0].clone();
        assert!(classify_plane(&s, &gen).is_err());
    }
}
