//! Projective geometry over a finite field: normalized points, canonical
//! subspaces, reflexive sesquilinear and quadratic forms, perps, and the
//! Witt index.
//!
//! Projective points are represented by the unique vector representative
//! whose first nonzero coordinate is 1. Subspaces are represented by the
//! reduced row echelon form of a spanning set, which makes equality
//! checks canonical.

use crate::error::{Error, Result};
use crate::field::{El, Field};
use crate::linalg::{self, Matrix};
use std::sync::Arc;

/// A projective point: a normalized representative vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(pub Vec<El>);

impl ProjPoint {
    /// Normalizes an arbitrary nonzero vector (first nonzero coordinate 1).
    pub fn normalize(f: &Field, v: &[El]) -> Option<ProjPoint> {
        let lead = v.iter().position(|e| !e.is_zero())?;
        let inv = f.inv(v[lead]).expect("leading coordinate nonzero");
        Some(ProjPoint(linalg::vec_scale(f, inv, v)))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[El] {
        &self.0
    }

    /// Comma-separated coordinate labels, e.g. `0,1,a,a^2`.
    pub fn label(&self, f: &Field) -> String {
        self.0
            .iter()
            .map(|&e| f.label(e))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(f: &Field, s: &str) -> Result<ProjPoint> {
        let coords: Vec<El> = s
            .split(',')
            .map(|t| f.parse_label(t))
            .collect::<Result<_>>()?;
        ProjPoint::normalize(f, &coords)
            .ok_or_else(|| Error::InvalidParameter("zero vector is not a point".into()))
    }
}

/// Enumerates the points of PG(dim-1, q) in lexicographic vector order.
pub fn pg_points(f: &Field, dim: usize) -> Vec<ProjPoint> {
    let q = f.q() as usize;
    let mut out = Vec::new();
    // Vectors with more leading zeros are lexicographically smaller.
    for lead in (0..dim).rev() {
        let tail = dim - lead - 1;
        let count = q.pow(tail as u32);
        for code in 0..count {
            let mut v = vec![El::ZERO; dim];
            v[lead] = El::ONE;
            // leftmost tail coordinate is the most significant digit
            let mut c = code;
            for j in (0..tail).rev() {
                v[lead + 1 + j] = El((c % q) as u32);
                c /= q;
            }
            out.push(ProjPoint(v));
        }
    }
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    out
}

/// A linear subspace as the canonical RREF of a spanning set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    mat: Matrix,
}

impl Subspace {
    pub fn from_generators(f: &Field, rows: &[Vec<El>]) -> Subspace {
        let mut mat = Matrix::from_rows(rows);
        mat.rref(f);
        Subspace { mat }
    }

    pub fn from_points(f: &Field, pts: &[ProjPoint]) -> Subspace {
        let rows: Vec<Vec<El>> = pts.iter().map(|p| p.0.clone()).collect();
        Subspace::from_generators(f, &rows)
    }

    /// Vector-space dimension (projective dimension + 1).
    pub fn vdim(&self) -> usize {
        self.mat.rows
    }

    /// Projective dimension; the empty subspace reports -1.
    pub fn proj_dim(&self) -> i64 {
        self.mat.rows as i64 - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.mat.cols
    }

    pub fn basis(&self) -> &Matrix {
        &self.mat
    }

    pub fn contains_vector(&self, f: &Field, v: &[El]) -> bool {
        // reduce v against the RREF basis
        let mut v = v.to_vec();
        for i in 0..self.mat.rows {
            let pivot = self
                .mat
                .row(i)
                .iter()
                .position(|e| !e.is_zero())
                .expect("no zero rows in RREF");
            let c = v[pivot];
            if !c.is_zero() {
                v = linalg::vec_sub(f, &v, &linalg::vec_scale(f, c, self.mat.row(i)));
            }
        }
        linalg::vec_is_zero(&v)
    }

    pub fn contains_point(&self, f: &Field, p: &ProjPoint) -> bool {
        self.contains_vector(f, &p.0)
    }

    /// Span of the union of two subspaces.
    pub fn join(&self, f: &Field, other: &Subspace) -> Subspace {
        let mut mat = self.mat.vstack(&other.mat);
        mat.rref(f);
        Subspace { mat }
    }

    /// Intersection of two subspaces.
    pub fn intersect(&self, f: &Field, other: &Subspace) -> Subspace {
        // x lies in a row space iff it is annihilated by the dot-orthogonal
        // complement of that row space
        let ka = self.mat.kernel(f);
        let kb = other.mat.kernel(f);
        let mut mat = ka.vstack(&kb).kernel(f);
        mat.rref(f);
        Subspace { mat }
    }

    /// All projective points of the subspace, in lexicographic order.
    pub fn points(&self, f: &Field) -> Vec<ProjPoint> {
        let k = self.mat.rows;
        let mut pts: Vec<ProjPoint> = pg_points(f, k)
            .into_iter()
            .map(|c| {
                let v = self.mat.apply_row(f, &c.0);
                ProjPoint::normalize(f, &v).expect("basis rows independent")
            })
            .collect();
        pts.sort();
        pts
    }
}

/// The kind of reflexive form defining a polar space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum FormKind {
    Symplectic,
    Hermitian,
    Quadratic,
}

/// Subtype of a nondegenerate quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum QuadType {
    Hyperbolic,
    Parabolic,
    Elliptic,
}

/// A reflexive sesquilinear or quadratic form on GF(q)^dim.
///
/// For symplectic and Hermitian forms `gram` is the defining matrix of
/// b(u, v) = u · gram · σ(v)^T (σ the identity or the conjugation).
/// For quadratic forms `quad` holds the upper-triangular coefficients of
/// f(v) = Σ_{i<=j} c_ij v_i v_j and `gram` holds the polarized bilinear form
/// g(u, v) = f(u + v) - f(u) - f(v).
#[derive(Debug, Clone)]
pub struct FormSpec {
    pub field: Arc<Field>,
    pub kind: FormKind,
    pub dim: usize,
    gram: Matrix,
    quad: Option<Matrix>,
    conj_exp: u32,
    pub subtype: Option<QuadType>,
}

impl FormSpec {
    /// Standard symplectic form on an even-dimensional space:
    /// b(e_{2i}, e_{2i+1}) = 1 = -b(e_{2i+1}, e_{2i}).
    pub fn symplectic(field: Arc<Field>, dim: usize) -> Result<FormSpec> {
        if dim == 0 || dim % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "symplectic form needs positive even dimension, got {dim}"
            )));
        }
        let f = &*field;
        let mut gram = Matrix::zero(dim, dim);
        for i in (0..dim).step_by(2) {
            gram.set(i, i + 1, El::ONE);
            gram.set(i + 1, i, f.neg(El::ONE));
        }
        Ok(FormSpec {
            field,
            kind: FormKind::Symplectic,
            dim,
            gram,
            quad: None,
            conj_exp: 0,
            subtype: None,
        })
    }

    /// Standard Hermitian form Σ x_i conj(x_i) (identity Gram matrix).
    pub fn hermitian(field: Arc<Field>, dim: usize) -> Result<FormSpec> {
        Self::hermitian_with_gram(field, Matrix::identity(dim))
    }

    /// Hermitian form with an explicit Gram matrix G satisfying
    /// G = conj(G)^T.
    pub fn hermitian_with_gram(field: Arc<Field>, gram: Matrix) -> Result<FormSpec> {
        if field.h() % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "Hermitian form needs a quadratic extension field, got GF({}^{})",
                field.p(),
                field.h()
            )));
        }
        let dim = gram.rows;
        if dim == 0 || gram.cols != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: gram.cols,
            });
        }
        let conj_exp = field.h() / 2;
        let f = &*field;
        let ct = gram.frobenius(f, conj_exp).transpose();
        if ct != gram {
            return Err(Error::InvalidParameter(
                "Gram matrix is not Hermitian (G != conj(G)^T)".into(),
            ));
        }
        Ok(FormSpec {
            field,
            kind: FormKind::Hermitian,
            dim,
            gram,
            quad: None,
            conj_exp,
            subtype: None,
        })
    }

    /// Standard quadratic form of the given subtype:
    /// hyperbolic x_0x_1 + x_2x_3 + ..., parabolic x_0^2 + x_1x_2 + ...,
    /// elliptic N(x_0, x_1) + x_2x_3 + ... with N an irreducible binary form.
    pub fn quadratic(field: Arc<Field>, dim: usize, subtype: QuadType) -> Result<FormSpec> {
        let ok = match subtype {
            QuadType::Hyperbolic => dim >= 2 && dim % 2 == 0,
            QuadType::Parabolic => dim >= 3 && dim % 2 == 1,
            QuadType::Elliptic => dim >= 4 && dim % 2 == 0,
        };
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "dimension {dim} is invalid for {subtype:?} quadratic form"
            )));
        }
        let f = &*field;
        let mut quad = Matrix::zero(dim, dim);
        match subtype {
            QuadType::Hyperbolic => {
                for i in (0..dim).step_by(2) {
                    quad.set(i, i + 1, El::ONE);
                }
            }
            QuadType::Parabolic => {
                quad.set(0, 0, El::ONE);
                for i in (1..dim).step_by(2) {
                    quad.set(i, i + 1, El::ONE);
                }
            }
            QuadType::Elliptic => {
                // anisotropic binary part x^2 + b xy + c y^2 with t^2+bt+c
                // irreducible; choose the lexicographically least (b, c)
                let (b, c) = irreducible_binary(f);
                quad.set(0, 0, El::ONE);
                quad.set(0, 1, b);
                quad.set(1, 1, c);
                for i in (2..dim).step_by(2) {
                    quad.set(i, i + 1, El::ONE);
                }
            }
        }
        FormSpec::quadratic_with_coeffs(field, quad, Some(subtype))
    }

    /// Quadratic form from explicit upper-triangular coefficients.
    pub fn quadratic_with_coeffs(
        field: Arc<Field>,
        quad: Matrix,
        subtype: Option<QuadType>,
    ) -> Result<FormSpec> {
        let dim = quad.rows;
        if dim == 0 || quad.cols != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: quad.cols,
            });
        }
        for i in 0..dim {
            for j in 0..i {
                if !quad.get(i, j).is_zero() {
                    return Err(Error::InvalidParameter(
                        "quadratic coefficients must be upper-triangular".into(),
                    ));
                }
            }
        }
        let f = &*field;
        // polarization g(e_i, e_j) = c_ij for i < j, g(e_i, e_i) = 2 c_ii
        let mut gram = Matrix::zero(dim, dim);
        for i in 0..dim {
            let two = f.add(El::ONE, El::ONE);
            gram.set(i, i, f.mul(two, quad.get(i, i)));
            for j in i + 1..dim {
                gram.set(i, j, quad.get(i, j));
                gram.set(j, i, quad.get(i, j));
            }
        }
        Ok(FormSpec {
            field,
            kind: FormKind::Quadratic,
            dim,
            gram,
            quad: Some(quad),
            conj_exp: 0,
            subtype,
        })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn quad_coeffs(&self) -> Option<&Matrix> {
        self.quad.as_ref()
    }

    pub fn conj_exp(&self) -> u32 {
        self.conj_exp
    }

    fn sigma(&self, a: El) -> El {
        self.field.frobenius(a, self.conj_exp)
    }

    /// The value of the quadratic form / Hermitian norm at a vector.
    /// Symplectic forms evaluate to zero everywhere.
    pub fn evaluate(&self, v: &[El]) -> El {
        debug_assert_eq!(v.len(), self.dim);
        let f = &*self.field;
        match self.kind {
            FormKind::Symplectic => El::ZERO,
            FormKind::Hermitian => self.bilinear(v, v),
            FormKind::Quadratic => {
                let quad = self.quad.as_ref().expect("quadratic coefficients");
                let mut acc = El::ZERO;
                for i in 0..self.dim {
                    if v[i].is_zero() {
                        continue;
                    }
                    for j in i..self.dim {
                        let c = quad.get(i, j);
                        if !c.is_zero() {
                            acc = f.add(acc, f.mul(c, f.mul(v[i], v[j])));
                        }
                    }
                }
                acc
            }
        }
    }

    /// The reflexive (sesqui)linear companion: the defining form for
    /// symplectic/Hermitian spaces and the polarization for quadratic ones.
    pub fn bilinear(&self, u: &[El], v: &[El]) -> El {
        debug_assert_eq!(u.len(), self.dim);
        debug_assert_eq!(v.len(), self.dim);
        let f = &*self.field;
        let mut acc = El::ZERO;
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            let mut row = El::ZERO;
            for j in 0..self.dim {
                let g = self.gram.get(i, j);
                if !g.is_zero() && !v[j].is_zero() {
                    row = f.add(row, f.mul(g, self.sigma(v[j])));
                }
            }
            acc = f.add(acc, f.mul(u[i], row));
        }
        acc
    }

    /// Precomputed column G·σ(v)^T so that b(u, v) = u · that column.
    pub fn bilinear_profile(&self, v: &[El]) -> Vec<El> {
        let f = &*self.field;
        let sv: Vec<El> = v.iter().map(|&e| self.sigma(e)).collect();
        self.gram.apply_col(f, &sv)
    }

    pub fn is_singular_vector(&self, v: &[El]) -> bool {
        self.evaluate(v).is_zero()
    }

    pub fn orthogonal(&self, u: &[El], v: &[El]) -> bool {
        self.bilinear(u, v).is_zero()
    }

    /// True when every point of the subspace is singular and every pair of
    /// basis vectors is orthogonal.
    pub fn is_totally_singular(&self, s: &Subspace) -> bool {
        let b = s.basis();
        for i in 0..b.rows {
            if !self.is_singular_vector(b.row(i)) {
                return false;
            }
            for j in i + 1..b.rows {
                if !self.orthogonal(b.row(i), b.row(j)) {
                    return false;
                }
            }
        }
        true
    }

    /// The perp of a subspace with respect to the companion form.
    /// For nondegenerate companions dim(S) + dim(S^perp) = dim.
    pub fn perp(&self, s: &Subspace) -> Subspace {
        let f = &*self.field;
        // b(x, s) = 0 for each basis vector s: constraint row = σ(s) · G^T
        let constraints = s.basis().frobenius(f, self.conj_exp).mul(f, &self.gram.transpose());
        let mut mat = constraints.kernel(f);
        mat.rref(f);
        Subspace { mat }
    }

    pub fn perp_point(&self, p: &ProjPoint) -> Subspace {
        self.perp(&Subspace::from_generators(&self.field, &[p.0.clone()]))
    }

    /// Radical of the companion (sesqui)linear form: {w : w·G = 0}, which by
    /// reflexivity is also {w : b(v,w) = 0 for all v}. The transpose matters
    /// for Hermitian Gram matrices, where G ≠ Gᵀ in general.
    pub fn radical(&self) -> Subspace {
        let f = &*self.field;
        let mut mat = self.gram.transpose().kernel(f);
        mat.rref(f);
        Subspace { mat }
    }

    /// Nondegeneracy: invertible Gram matrix for sesquilinear forms; for
    /// quadratic forms, no singular projective point in the radical of the
    /// polarization (which tolerates the nucleus in even characteristic).
    pub fn is_nondegenerate(&self) -> bool {
        let f = &*self.field;
        match self.kind {
            FormKind::Symplectic | FormKind::Hermitian => self.gram.rank(f) == self.dim,
            FormKind::Quadratic => {
                let rad = self.radical();
                rad.points(f)
                    .iter()
                    .all(|p| !self.is_singular_vector(&p.0))
            }
        }
    }

    /// Restriction of the form to the row space of `basis`, expressed in the
    /// coordinates of the basis rows.
    pub fn restrict(&self, basis: &Matrix) -> Result<FormSpec> {
        if basis.cols != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: basis.cols,
            });
        }
        let k = basis.rows;
        match self.kind {
            FormKind::Symplectic | FormKind::Hermitian => {
                let mut gram = Matrix::zero(k, k);
                for i in 0..k {
                    for j in 0..k {
                        gram.set(i, j, self.bilinear(basis.row(i), basis.row(j)));
                    }
                }
                Ok(FormSpec {
                    field: self.field.clone(),
                    kind: self.kind,
                    dim: k,
                    gram,
                    quad: None,
                    conj_exp: self.conj_exp,
                    subtype: None,
                })
            }
            FormKind::Quadratic => {
                let mut quad = Matrix::zero(k, k);
                for i in 0..k {
                    quad.set(i, i, self.evaluate(basis.row(i)));
                    for j in i + 1..k {
                        quad.set(i, j, self.bilinear(basis.row(i), basis.row(j)));
                    }
                }
                FormSpec::quadratic_with_coeffs(self.field.clone(), quad, None)
            }
        }
    }

    /// All singular projective points, in lexicographic vector order.
    pub fn singular_points(&self) -> Vec<ProjPoint> {
        pg_points(&self.field, self.dim)
            .into_iter()
            .filter(|p| self.is_singular_vector(&p.0))
            .collect()
    }

    /// Witt index: the common vector-space dimension of maximal totally
    /// singular subspaces, computed by exhaustive extension over singular
    /// points with canonical-chain pruning.
    pub fn witt_index(&self) -> usize {
        let pts = self.singular_points();
        let f = &*self.field;
        let profiles: Vec<Vec<El>> = pts.iter().map(|p| self.bilinear_profile(&p.0)).collect();
        let n = pts.len();
        let mut best = 0usize;

        // depth-first search over canonical chains (see polar::generators for
        // the same canonicity argument)
        struct Ctx<'a> {
            f: &'a Field,
            pts: &'a [ProjPoint],
            profiles: &'a [Vec<El>],
            n: usize,
        }
        fn extend(
            ctx: &Ctx,
            chain: &mut Vec<usize>,
            span_pts: &mut Vec<usize>,
            best: &mut usize,
        ) {
            *best = (*best).max(chain.len());
            let start = chain.last().map_or(0, |&b| b + 1);
            'cand: for c in start..ctx.n {
                if span_pts.binary_search(&c).is_ok() {
                    continue;
                }
                for &b in chain.iter() {
                    if !linalg::dot(ctx.f, &ctx.pts[b].0, &ctx.profiles[c]).is_zero() {
                        continue 'cand;
                    }
                }
                // new span points: old + lambda*c for old in span, plus c
                let mut new_pts = vec![c];
                let mut ok = true;
                for &s in span_pts.iter() {
                    for lam in 1..ctx.f.q() {
                        let v = linalg::vec_add_scaled(
                            ctx.f,
                            &ctx.pts[s].0,
                            El(lam),
                            &ctx.pts[c].0,
                        );
                        let p = ProjPoint::normalize(ctx.f, &v).expect("nonzero");
                        let idx = ctx
                            .pts
                            .binary_search(&p)
                            .expect("span of singular pairwise-orthogonal points is singular");
                        if idx < c {
                            ok = false;
                            break;
                        }
                        new_pts.push(idx);
                    }
                    if !ok {
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                let old_len = span_pts.len();
                span_pts.extend_from_slice(&new_pts);
                span_pts.sort_unstable();
                chain.push(c);
                extend(ctx, chain, span_pts, best);
                chain.pop();
                // rebuild span (cheaper than tracking removals)
                let removed: std::collections::HashSet<usize> = new_pts.into_iter().collect();
                span_pts.retain(|x| !removed.contains(x));
                debug_assert_eq!(span_pts.len(), old_len);
            }
        }

        let ctx = Ctx {
            f,
            pts: &pts,
            profiles: &profiles,
            n,
        };
        let mut chain = Vec::new();
        let mut span_pts = Vec::new();
        extend(&ctx, &mut chain, &mut span_pts, &mut best);
        best
    }
}

/// Lexicographically least (b, c) with t^2 + b t + c irreducible over GF(q).
fn irreducible_binary(f: &Field) -> (El, El) {
    for b in f.elements() {
        'c: for c in f.elements() {
            if c.is_zero() {
                continue;
            }
            for t in f.elements() {
                // t^2 + b t + c = 0?
                let v = f.add(f.add(f.mul(t, t), f.mul(b, t)), c);
                if v.is_zero() {
                    continue 'c;
                }
            }
            return (b, c);
        }
    }
    unreachable!("irreducible quadratics exist over every finite field")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, h: u32) -> Arc<Field> {
        Field::new(p, h).unwrap()
    }

    #[test]
    fn pg_point_counts_and_order() {
        let f = gf(2, 1);
        let pts = pg_points(&f, 4);
        assert_eq!(pts.len(), 15);
        let f4 = gf(2, 2);
        assert_eq!(pg_points(&f4, 3).len(), 21);
        // sorted and normalized
        for p in &pts {
            let lead = p.0.iter().position(|e| !e.is_zero()).unwrap();
            assert_eq!(p.0[lead], El::ONE);
        }
    }

    #[test]
    fn subspace_ops_match_pointwise_computation_pg32() {
        let f = gf(2, 1);
        subspace_ops_exhaustive(&f, 4);
    }

    #[test]
    fn subspace_ops_match_pointwise_computation_pg34() {
        let f = gf(2, 2);
        subspace_ops_exhaustive(&f, 4);
    }

    /// membership/intersection/join agree with naive point-set computation
    fn subspace_ops_exhaustive(f: &Arc<Field>, dim: usize) {
        use std::collections::BTreeSet;
        let pts = pg_points(f, dim);
        // enumerate all subspaces of a few dimensions via spans of point pairs
        let mut subs: Vec<Subspace> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for i in 0..pts.len() {
            for j in i..pts.len() {
                let s = Subspace::from_points(f, &[pts[i].clone(), pts[j].clone()]);
                if seen.insert(s.basis().clone()) {
                    subs.push(s);
                }
            }
        }
        let point_set = |s: &Subspace| -> BTreeSet<ProjPoint> { s.points(f).into_iter().collect() };
        // cap the quadratic loop: deterministic stride keeps this fast over GF(4)
        let stride = if f.q() > 2 { 7 } else { 1 };
        let sets: Vec<BTreeSet<ProjPoint>> = subs.iter().map(point_set).collect();
        for (i, a) in subs.iter().enumerate().step_by(stride) {
            for p in &pts {
                assert_eq!(a.contains_point(f, p), sets[i].contains(p));
            }
            for (j, b) in subs.iter().enumerate().step_by(stride) {
                let meet = a.intersect(f, b);
                let naive: BTreeSet<ProjPoint> =
                    sets[i].intersection(&sets[j]).cloned().collect();
                assert_eq!(point_set(&meet), naive, "intersection mismatch");
                let join = a.join(f, b);
                let naive_join = Subspace::from_points(
                    f,
                    &sets[i].iter().chain(sets[j].iter()).cloned().collect::<Vec<_>>(),
                );
                assert_eq!(join, naive_join, "join mismatch");
            }
        }
    }

    #[test]
    fn symplectic_form_is_alternating_and_nondegenerate() {
        let f = gf(2, 1);
        let w = FormSpec::symplectic(f.clone(), 4).unwrap();
        assert!(w.is_nondegenerate());
        for p in pg_points(&f, 4) {
            assert!(w.is_singular_vector(&p.0));
            assert!(w.bilinear(&p.0, &p.0).is_zero());
        }
        assert_eq!(w.witt_index(), 2);
    }

    #[test]
    fn hermitian_norm_counts_and_witt() {
        let f = gf(2, 2);
        let h = FormSpec::hermitian(f.clone(), 4).unwrap();
        assert!(h.is_nondegenerate());
        assert_eq!(h.singular_points().len(), 45);
        assert_eq!(h.witt_index(), 2);
        // b(u,v) = 0 iff b(v,u) = 0 (reflexivity), spot-check all pairs
        let pts = pg_points(&f, 4);
        for u in pts.iter().step_by(17) {
            for v in pts.iter().step_by(13) {
                assert_eq!(
                    h.bilinear(&u.0, &v.0).is_zero(),
                    h.bilinear(&v.0, &u.0).is_zero()
                );
            }
        }
    }

    #[test]
    fn quadratic_standard_forms_have_expected_witt_index() {
        let f2 = gf(2, 1);
        assert_eq!(
            FormSpec::quadratic(f2.clone(), 6, QuadType::Hyperbolic)
                .unwrap()
                .witt_index(),
            3
        );
        assert_eq!(
            FormSpec::quadratic(f2.clone(), 6, QuadType::Elliptic)
                .unwrap()
                .witt_index(),
            2
        );
        assert_eq!(
            FormSpec::quadratic(f2.clone(), 5, QuadType::Parabolic)
                .unwrap()
                .witt_index(),
            2
        );
        let f3 = gf(3, 1);
        assert_eq!(
            FormSpec::quadratic(f3, 5, QuadType::Parabolic).unwrap().witt_index(),
            2
        );
    }

    #[test]
    fn elliptic_binary_part_is_anisotropic() {
        for f in [gf(2, 1), gf(3, 1), gf(2, 2), gf(5, 1)] {
            let q = FormSpec::quadratic(f.clone(), 4, QuadType::Elliptic).unwrap();
            // no singular point with support in the first two coordinates
            for p in q.singular_points() {
                assert!(
                    !(p.0[2].is_zero() && p.0[3].is_zero()),
                    "anisotropic part vanished at {:?}",
                    p
                );
            }
        }
    }

    #[test]
    fn perp_dimension_and_involution() {
        let f = gf(2, 2);
        let h = FormSpec::hermitian(f.clone(), 4).unwrap();
        for p in h.singular_points().iter().step_by(5) {
            let perp = h.perp_point(p);
            assert_eq!(perp.vdim(), 3);
            let back = h.perp(&perp);
            assert_eq!(back.vdim(), 1);
            assert!(back.contains_point(&f, p));
        }
    }

    #[test]
    fn quadratic_polarization_identity() {
        // g(u,v) = f(u+v) - f(u) - f(v) for all pairs, elliptic over GF(3)
        let f = gf(3, 1);
        let q = FormSpec::quadratic(f.clone(), 4, QuadType::Elliptic).unwrap();
        let pts = pg_points(&f, 4);
        for u in pts.iter().step_by(3) {
            for v in pts.iter().step_by(5) {
                let sum = linalg::vec_add(&f, &u.0, &v.0);
                let lhs = q.bilinear(&u.0, &v.0);
                let rhs = f.sub(
                    f.sub(q.evaluate(&sum), q.evaluate(&u.0)),
                    q.evaluate(&v.0),
                );
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn parabolic_even_char_nucleus_is_tolerated() {
        let f = gf(2, 1);
        let q = FormSpec::quadratic(f.clone(), 5, QuadType::Parabolic).unwrap();
        // the polarization has a one-dimensional radical (the nucleus),
        // but the form itself is nondegenerate
        assert_eq!(q.radical().vdim(), 1);
        assert!(q.is_nondegenerate());
    }

    #[test]
    fn restricted_form_evaluates_consistently() {
        let f = gf(2, 2);
        let h = FormSpec::hermitian(f.clone(), 4).unwrap();
        let basis = Matrix::from_rows(&[
            vec![El::ONE, El::ZERO, El::ZERO, El::ONE],
            vec![El::ZERO, El::ONE, El(2), El::ZERO],
        ]);
        let r = h.restrict(&basis).unwrap();
        for c in pg_points(&f, 2) {
            let ambient = basis.apply_row(&f, &c.0);
            assert_eq!(
                r.evaluate(&c.0).is_zero(),
                h.evaluate(&ambient).is_zero()
            );
        }
    }
}
