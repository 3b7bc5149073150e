//! Projective semilinear collineations, setwise stabilizers via frame
//! mapping, group closure, and point orbits.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::{El, Field};
use crate::geometry::{FormSpec, ProjPoint};
use crate::linalg::Matrix;
use crate::polar::PolarSpace;
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

/// A projective semilinear map v ↦ v^{p^aut} · M, stored in canonical form:
/// the first nonzero entry of M (row-major) is scaled to 1, and the
/// automorphism exponent is reduced modulo the field's extension degree.
#[derive(Clone)]
pub struct Collineation {
    field: Arc<Field>,
    mat: Matrix,
    aut: u32,
}

impl PartialEq for Collineation {
    fn eq(&self, other: &Self) -> bool {
        self.aut == other.aut && self.mat == other.mat
    }
}
impl Eq for Collineation {}
impl std::hash::Hash for Collineation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.aut.hash(state);
        self.mat.hash(state);
    }
}

impl std::fmt::Debug for Collineation {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "Collineation(aut={}, mat={:?})", self.aut, self.mat)
    }
}

impl Collineation {
    /// Builds the map v ↦ v^{p^aut} · M, canonicalizing the scalar.
    pub fn new(field: Arc<Field>, mat: Matrix, aut: u32) -> Result<Collineation> {
        if mat.rows != mat.cols {
            return Err(Error::DimensionMismatch {
                expected: mat.rows,
                got: mat.cols,
            });
        }
        mat.inverse(&field)
            .map_err(|_| Error::Precondition("collineation matrix is singular".into()))?;
        let mut c = Collineation {
            aut: aut % field.h(),
            mat,
            field,
        };
        c.canonicalize();
        Ok(c)
    }

    pub fn identity(field: Arc<Field>, dim: usize) -> Collineation {
        Collineation {
            mat: Matrix::identity(dim),
            aut: 0,
            field,
        }
    }

    fn canonicalize(&mut self) {
        let f = &*self.field;
        let lead = (0..self.mat.rows * self.mat.cols)
            .map(|i| self.mat.get(i / self.mat.cols, i % self.mat.cols))
            .find(|e| !e.is_zero())
            .expect("invertible matrix has a nonzero entry");
        if lead == El::ONE {
            return;
        }
        let s = f.inv(lead).expect("nonzero");
        for i in 0..self.mat.rows {
            for j in 0..self.mat.cols {
                self.mat.set(i, j, f.mul(s, self.mat.get(i, j)));
            }
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn aut_exponent(&self) -> u32 {
        self.aut
    }

    pub fn is_linear(&self) -> bool {
        self.aut == 0
    }

    pub fn dim(&self) -> usize {
        self.mat.rows
    }

    pub fn apply_vector(&self, v: &[El]) -> Vec<El> {
        let f = &*self.field;
        let tw: Vec<El> = v.iter().map(|&x| f.frobenius(x, self.aut)).collect();
        self.mat.apply_row(f, &tw)
    }

    pub fn apply_point(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::normalize(&self.field, &self.apply_vector(&p.0))
            .expect("image of a nonzero vector under an invertible map is nonzero")
    }

    /// Composition: first `self`, then `other`.
    pub fn then(&self, other: &Collineation) -> Collineation {
        let f = &*self.field;
        let mat = self.mat.frobenius(f, other.aut).mul(f, &other.mat);
        let mut c = Collineation {
            field: self.field.clone(),
            mat,
            aut: (self.aut + other.aut) % f.h(),
        };
        c.canonicalize();
        c
    }

    pub fn inverse(&self) -> Collineation {
        let f = &*self.field;
        let back = (f.h() - self.aut) % f.h();
        let mat = self
            .mat
            .frobenius(f, back)
            .inverse(f)
            .expect("collineation matrices are invertible");
        let mut c = Collineation {
            field: self.field.clone(),
            mat,
            aut: back,
        };
        c.canonicalize();
        c
    }

    /// If the map multiplies the form by a fixed nonzero scalar — i.e.
    /// M·G·σ(M)ᵀ = c·G^{p^aut} — returns that scalar.
    pub fn preserves_form_scalar(&self, form: &FormSpec) -> Option<El> {
        let f = &*self.field;
        let lhs = self
            .mat
            .mul(f, form.gram())
            .mul(f, &self.mat.frobenius(f, form.conj_exp()).transpose());
        let rhs = form.gram().frobenius(f, self.aut);
        let mut scalar: Option<El> = None;
        for i in 0..lhs.rows {
            for j in 0..lhs.cols {
                let a = lhs.get(i, j);
                let b = rhs.get(i, j);
                match (a.is_zero(), b.is_zero()) {
                    (true, true) => {}
                    (false, false) => {
                        let c = f.div(a, b).expect("nonzero");
                        match scalar {
                            None => scalar = Some(c),
                            Some(s) if s == c => {}
                            _ => return None,
                        }
                    }
                    _ => return None,
                }
            }
        }
        scalar
    }

    /// The permutation induced on a polar space's points. Errors if the map
    /// does not preserve the singular point set.
    pub fn point_permutation(&self, space: &PolarSpace) -> Result<Vec<usize>> {
        let mut perm = Vec::with_capacity(space.n());
        for p in space.points() {
            let img = self.apply_point(p);
            let Some(i) = space.point_index(&img) else {
                return Err(Error::Construction(format!(
                    "collineation maps singular {} to non-singular {}",
                    p.label(&self.field),
                    img.label(&self.field)
                )));
            };
            perm.push(i);
        }
        Ok(perm)
    }
}

/// A concrete group of collineations: generators plus the full element list.
pub struct GroupHandle {
    field: Arc<Field>,
    dim: usize,
    gens: Vec<Collineation>,
    elements: Vec<Collineation>,
}

impl GroupHandle {
    /// Closes a generator list under composition (breadth-first), erroring
    /// above `cap` elements. The result is verified to be product- and
    /// inverse-closed.
    pub fn from_generators(
        field: Arc<Field>,
        dim: usize,
        gens: Vec<Collineation>,
        cap: usize,
    ) -> Result<GroupHandle> {
        let id = Collineation::identity(field.clone(), dim);
        let mut set: HashSet<Collineation> = HashSet::new();
        set.insert(id.clone());
        let mut queue: VecDeque<Collineation> = VecDeque::new();
        queue.push_back(id);
        while let Some(g) = queue.pop_front() {
            for s in &gens {
                let next = g.then(s);
                if set.insert(next.clone()) {
                    if set.len() > cap {
                        return Err(Error::CapExceeded(format!(
                            "group closure exceeded {cap} elements"
                        )));
                    }
                    queue.push_back(next);
                }
            }
        }
        let handle = GroupHandle {
            field,
            dim,
            gens,
            elements: set.into_iter().collect(),
        };
        handle.verify_group()?;
        Ok(handle)
    }

    /// Wraps a complete element list, verifying the group axioms.
    pub fn from_elements(
        field: Arc<Field>,
        dim: usize,
        elements: Vec<Collineation>,
    ) -> Result<GroupHandle> {
        let mut dedup: HashSet<Collineation> = HashSet::new();
        let mut kept = Vec::new();
        for e in elements {
            if dedup.insert(e.clone()) {
                kept.push(e);
            }
        }
        let handle = GroupHandle {
            field,
            dim,
            gens: kept.clone(),
            elements: kept,
        };
        handle.verify_group()?;
        Ok(handle)
    }

    fn verify_group(&self) -> Result<()> {
        let set: HashSet<&Collineation> = self.elements.iter().collect();
        if !set.contains(&Collineation::identity(self.field.clone(), self.dim)) {
            return Err(Error::Construction("closure lacks the identity".into()));
        }
        for g in &self.elements {
            if !set.contains(&g.inverse()) {
                return Err(Error::Construction("closure not inverse-closed".into()));
            }
            for h in &self.elements {
                if !set.contains(&g.then(h)) {
                    return Err(Error::Construction("closure not product-closed".into()));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Collineation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Collineation] {
        &self.gens
    }

    pub fn contains(&self, g: &Collineation) -> bool {
        self.elements.contains(g)
    }

    /// The subgroup of linear, form-preserving-up-to-scalar elements — the
    /// intersection with the projective unitary/isometry group of `form`.
    pub fn form_preserving_subgroup(&self, form: &FormSpec) -> Result<GroupHandle> {
        let kept: Vec<Collineation> = self
            .elements
            .iter()
            .filter(|g| g.is_linear() && g.preserves_form_scalar(form).is_some())
            .cloned()
            .collect();
        GroupHandle::from_elements(self.field.clone(), self.dim, kept)
    }

    /// Orbit partition of the space's points under the full element list.
    pub fn orbits(&self, space: &Arc<PolarSpace>) -> Result<OrbitPartition> {
        orbits_under(space, &self.elements)
    }
}

/// Orbits of a polar space's points under a set of collineations.
pub struct OrbitPartition {
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
}

impl OrbitPartition {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_index_of(&self, point: usize) -> usize {
        self.orbit_of[point]
    }

    pub fn orbit(&self, idx: usize) -> &[usize] {
        &self.orbits[idx]
    }

    /// Lexicographically least member of each orbit (= least index, since
    /// points are stored in lexicographic order).
    pub fn representatives(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o[0]).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    /// Matches a published representative list against the partition by
    /// membership: entry k is the internal orbit index containing the k-th
    /// given point. Errors unless this is a bijection onto all orbits.
    pub fn align(&self, space: &PolarSpace, reps: &[ProjPoint]) -> Result<Vec<usize>> {
        if reps.len() != self.orbits.len() {
            return Err(Error::Precondition(format!(
                "{} representatives given for {} orbits",
                reps.len(),
                self.orbits.len()
            )));
        }
        let mut map = Vec::with_capacity(reps.len());
        let mut seen = vec![false; self.orbits.len()];
        for p in reps {
            let idx = space
                .point_index(p)
                .ok_or_else(|| Error::Precondition(format!("{p:?} is not a point")))?;
            let o = self.orbit_of[idx];
            if seen[o] {
                return Err(Error::Construction(
                    "two representatives lie in the same orbit".into(),
                ));
            }
            seen[o] = true;
            map.push(o);
        }
        Ok(map)
    }
}

/// Orbit of one point under the group generated by `gens` (breadth-first on
/// generator images; closure of the generator list is not required).
pub fn orbit_of(space: &PolarSpace, gens: &[Collineation], start: usize) -> Result<BitSet> {
    let perms: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| g.point_permutation(space))
        .collect::<Result<_>>()?;
    let mut seen = BitSet::new(space.n());
    seen.insert(start);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for perm in &perms {
            let y = perm[x];
            if !seen.contains(y) {
                seen.insert(y);
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// Full orbit partition of the space's points under the group generated by
/// `gens`. Orbits are sorted by least member; sizes sum to n.
pub fn orbits_under(space: &Arc<PolarSpace>, gens: &[Collineation]) -> Result<OrbitPartition> {
    let perms: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| g.point_permutation(space))
        .collect::<Result<_>>()?;
    let n = space.n();
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let idx = orbits.len();
        let mut members = vec![start];
        orbit_of[start] = idx;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for perm in &perms {
                let y = perm[x];
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = idx;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    debug_assert_eq!(orbits.iter().map(Vec::len).sum::<usize>(), n);
    // refinement check: the partition is stable under every generator
    for perm in &perms {
        for x in 0..n {
            assert_eq!(orbit_of[x], orbit_of[perm[x]], "orbit split under a generator");
        }
    }
    Ok(OrbitPartition { orbits, orbit_of })
}

/// Options for [`setwise_stabilizer`].
#[derive(Clone, Copy)]
pub struct StabilizerOptions {
    /// Restrict to linear maps (automorphism exponent 0).
    pub linear_only: bool,
    /// Upper bound on the candidate-assignment count before enumeration.
    pub candidate_cap: u128,
}

impl Default for StabilizerOptions {
    fn default() -> Self {
        StabilizerOptions {
            linear_only: false,
            candidate_cap: 50_000_000,
        }
    }
}

/// Union-find over scalar indices tracking multipliers: for a non-root i,
/// λ_i = coeff_i · λ_{parent(i)}; each root r carries a scale, so the
/// component's values are λ_i = (path product) · scale_r · s_r for one
/// unknown symbol s_r per component.
#[derive(Clone)]
struct ScalarChain {
    parent: Vec<usize>,
    coeff: Vec<El>,
    scale: Vec<El>,
}

impl ScalarChain {
    fn new(n: usize) -> ScalarChain {
        ScalarChain {
            parent: (0..n).collect(),
            coeff: vec![El::ONE; n],
            scale: vec![El::ONE; n],
        }
    }

    /// Path multiplier to the root, excluding the root's scale.
    fn find_excl(&mut self, f: &Field, i: usize) -> (usize, El) {
        if self.parent[i] == i {
            return (i, El::ONE);
        }
        let (root, up) = self.find_excl(f, self.parent[i]);
        self.parent[i] = root;
        self.coeff[i] = f.mul(self.coeff[i], up);
        (root, self.coeff[i])
    }

    /// Returns (root, m) with λ_i = m · s_root.
    fn find(&mut self, f: &Field, i: usize) -> (usize, El) {
        let (root, excl) = self.find_excl(f, i);
        (root, f.mul(excl, self.scale[root]))
    }

    /// Imposes λ_i = r_i · μ for all (i, r_i), introducing one fresh symbol
    /// μ shared by the constraints. Returns false on inconsistency.
    fn impose(&mut self, f: &Field, constraints: &[(usize, El)]) -> bool {
        // per current root: s_root = (r_i / m_i) · μ must be consistent
        let mut by_root: HashMap<usize, El> = HashMap::new();
        for &(i, r) in constraints {
            let (root, m) = self.find(f, i);
            let ratio = f.div(r, m).expect("multipliers are units");
            match by_root.entry(root) {
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(ratio);
                }
                std::collections::hash_map::Entry::Occupied(e) => {
                    if *e.get() != ratio {
                        return false;
                    }
                }
            }
        }
        let mut roots: Vec<(usize, El)> = by_root.into_iter().collect();
        roots.sort_unstable_by_key(|&(r, _)| r);
        let (anchor, anchor_ratio) = roots[0];
        // redefine the anchor's symbol as μ: λ_j = excl_j · scale_A · s_A
        // with s_A = ratio_A · μ  ⇒  new scale_A = scale_A · ratio_A
        let new_scale = f.mul(self.scale[anchor], anchor_ratio);
        self.scale[anchor] = new_scale;
        for &(r, ratio) in &roots[1..] {
            // under r: λ_j = excl_j · scale_r · ratio_r · μ; attach r below
            // the anchor so that excl_j · coeff_r · scale_A_new · μ matches
            let sr = f.mul(self.scale[r], ratio);
            self.parent[r] = anchor;
            self.coeff[r] = f.div(sr, new_scale).expect("unit");
        }
        true
    }

    /// The component roots, after path compression of every index.
    fn components(&mut self, f: &Field) -> Vec<usize> {
        let mut roots: Vec<usize> = (0..self.parent.len())
            .map(|i| self.find_excl(f, i).0)
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots
    }
}

struct StabilizerSearch<'a> {
    f: &'a Arc<Field>,
    dim: usize,
    /// Distinct points across all cells, with their cell-membership masks.
    universe: Vec<ProjPoint>,
    mask: Vec<u64>,
    by_point: HashMap<ProjPoint, u64>,
    /// Basis site indices into `universe`, and the basis matrix.
    basis_sites: Vec<usize>,
    basis: Matrix,
    /// Extra sites: (universe index, coordinates in the basis).
    extras: Vec<(usize, Vec<El>)>,
    /// Allowed target lists per universe index (same membership mask).
    allowed: HashMap<u64, Vec<usize>>,
    found: Vec<Collineation>,
}

impl<'a> StabilizerSearch<'a> {
    fn allowed_of(&self, u: usize) -> &[usize] {
        &self.allowed[&self.mask[u]]
    }

    fn run(&mut self, aut: u32) {
        let mut images = Vec::with_capacity(self.dim);
        let mut used = HashSet::new();
        self.assign_basis(aut, &mut images, &mut used);
    }

    fn assign_basis(&mut self, aut: u32, images: &mut Vec<usize>, used: &mut HashSet<usize>) {
        let f = &**self.f;
        if images.len() == self.dim {
            let rows: Vec<Vec<El>> = images
                .iter()
                .map(|&u| self.universe[u].0.clone())
                .collect();
            let t = Matrix::from_rows(&rows);
            let Ok(t_inv) = t.inverse(f) else {
                return;
            };
            let chain = ScalarChain::new(self.dim);
            self.assign_extras(aut, images, used, &t, &t_inv, 0, chain);
            return;
        }
        let site = self.basis_sites[images.len()];
        let targets: Vec<usize> = self.allowed_of(site).to_vec();
        for u in targets {
            if used.contains(&u) {
                continue;
            }
            // prune dependent image prefixes
            let rows: Vec<Vec<El>> = images
                .iter()
                .chain(std::iter::once(&u))
                .map(|&v| self.universe[v].0.clone())
                .collect();
            if Matrix::from_rows(&rows).rank(f) != rows.len() {
                continue;
            }
            images.push(u);
            used.insert(u);
            self.assign_basis(aut, images, used);
            used.remove(&u);
            images.pop();
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn assign_extras(
        &mut self,
        aut: u32,
        images: &[usize],
        used: &mut HashSet<usize>,
        t: &Matrix,
        t_inv: &Matrix,
        k: usize,
        chain: ScalarChain,
    ) {
        let f = &**self.f;
        if k == self.extras.len() {
            self.finish(aut, images, t, chain);
            return;
        }
        let (site, coords) = self.extras[k].clone();
        let support: Vec<usize> = (0..self.dim).filter(|&i| !coords[i].is_zero()).collect();
        let targets: Vec<usize> = self.allowed_of(site).to_vec();
        for u in targets {
            if used.contains(&u) {
                continue;
            }
            // image of the extra point must decompose over the SAME support:
            // d = u · T⁻¹ are its coordinates in the image basis
            let d = t_inv.apply_row(f, &self.universe[u].0);
            let dsup: Vec<usize> = (0..self.dim).filter(|&i| !d[i].is_zero()).collect();
            if dsup != support {
                continue;
            }
            // λ_i = (d_i / φ^aut(c_i)) · μ on the support
            let cons: Vec<(usize, El)> = support
                .iter()
                .map(|&i| {
                    let ca = f.frobenius(coords[i], aut);
                    (i, f.div(d[i], ca).expect("support"))
                })
                .collect();
            let mut next = chain.clone();
            if !next.impose(f, &cons) {
                continue;
            }
            used.insert(u);
            self.assign_extras(aut, images, used, t, t_inv, k + 1, next);
            used.remove(&u);
        }
    }

    fn finish(&mut self, aut: u32, images: &[usize], t: &Matrix, mut chain: ScalarChain) {
        let f = &**self.f;
        // free symbols: one per component; the component holding index 0 is
        // pinned to 1 (projective normalization), the rest are enumerated
        let comps = chain.components(f);
        let root0 = chain.find_excl(f, 0).0;
        let free: Vec<usize> = comps.iter().copied().filter(|&r| r != root0).collect();
        let units: Vec<El> = f.elements().filter(|e| !e.is_zero()).collect();
        let mut symbol: HashMap<usize, El> = HashMap::new();
        symbol.insert(root0, El::ONE);
        let mut stack = vec![(0usize, symbol)];
        while let Some((k, sym)) = stack.pop() {
            if k == free.len() {
                let lambda: Vec<El> = (0..self.dim)
                    .map(|i| {
                        let (root, c) = chain.find(f, i);
                        f.mul(c, sym[&root])
                    })
                    .collect();
                self.emit(aut, images, t, &lambda);
                continue;
            }
            for &u in &units {
                let mut s = sym.clone();
                s.insert(free[k], u);
                stack.push((k + 1, s));
            }
        }
    }

    fn emit(&mut self, aut: u32, images: &[usize], t: &Matrix, lambda: &[El]) {
        let f = &**self.f;
        // M = (B^{φ^aut})⁻¹ · Λ · T
        let b_aut = self.basis.frobenius(f, aut);
        let Ok(b_inv) = b_aut.inverse(f) else {
            return;
        };
        let mut lam_t = t.clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                lam_t.set(i, j, f.mul(lambda[i], t.get(i, j)));
            }
        }
        let m = b_inv.mul(f, &lam_t);
        let Ok(g) = Collineation::new(self.f.clone(), m, aut) else {
            return;
        };
        let _ = images;
        // full setwise verification: the image of each point must lie in
        // exactly the same cells
        let ok = self.by_point.iter().all(|(p, &msk)| {
            self.by_point.get(&g.apply_point(p)).copied() == Some(msk)
        });
        if ok {
            self.found.push(g);
        }
    }
}

/// All projective semilinear maps that stabilize each given point set
/// (cell) setwise, found by frame mapping: a spanning set of sites is
/// selected from the cells, candidate images are constrained to points with
/// identical cell membership, and each complete assignment determines the
/// map up to the enumerated scalar symbols.
///
/// With `linear_only`, field-automorphism twists are excluded. Errors if the
/// cells do not span the ambient space, or if the estimated candidate count
/// exceeds the configured cap.
pub fn setwise_stabilizer(
    field: &Arc<Field>,
    dim: usize,
    cells: &[Vec<ProjPoint>],
    opts: StabilizerOptions,
) -> Result<GroupHandle> {
    if cells.is_empty() || cells.len() > 64 {
        return Err(Error::Precondition(
            "between 1 and 64 cells are required".into(),
        ));
    }
    let f = field;
    // universe of distinct points with cell-membership masks
    let mut by_point: HashMap<ProjPoint, usize> = HashMap::new();
    let mut universe: Vec<ProjPoint> = Vec::new();
    let mut mask: Vec<u64> = Vec::new();
    for (ci, cell) in cells.iter().enumerate() {
        for p in cell {
            if p.0.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.0.len(),
                });
            }
            let idx = *by_point.entry(p.clone()).or_insert_with(|| {
                universe.push(p.clone());
                mask.push(0);
                universe.len() - 1
            });
            mask[idx] |= 1 << ci;
        }
    }
    let masks: HashMap<ProjPoint, u64> = universe
        .iter()
        .cloned()
        .zip(mask.iter().copied())
        .collect();
    let mut allowed: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, &m) in mask.iter().enumerate() {
        allowed.entry(m).or_default().push(i);
    }
    // site selection: smallest allowed-classes first, greedy independent
    let mut order: Vec<usize> = (0..universe.len()).collect();
    order.sort_by_key(|&i| (allowed[&mask[i]].len(), universe[i].clone()));
    let mut basis_rows: Vec<Vec<El>> = Vec::new();
    let mut basis_sites = Vec::new();
    let mut probe = Matrix::zero(0, dim);
    for &i in &order {
        if basis_rows.len() == dim {
            break;
        }
        let mut trial = probe.clone();
        trial = trial.vstack(&Matrix::from_rows(&[universe[i].0.clone()]));
        if trial.rank(f) > basis_rows.len() {
            basis_rows.push(universe[i].0.clone());
            basis_sites.push(i);
            probe = {
                let mut m = Matrix::from_rows(&basis_rows);
                m.rref(f);
                m
            };
        }
    }
    if basis_rows.len() < dim {
        return Err(Error::Precondition(format!(
            "cells span only {} of {} dimensions — no frame available",
            basis_rows.len(),
            dim
        )));
    }
    let basis = Matrix::from_rows(&basis_rows);
    let basis_inv = basis.inverse(f).expect("independent rows");
    // extra sites: points that connect scalar components; keep any extra
    // that reduces the number of components
    let mut extras: Vec<(usize, Vec<El>)> = Vec::new();
    {
        let mut dsu: Vec<usize> = (0..dim).collect();
        fn root(dsu: &mut Vec<usize>, mut x: usize) -> usize {
            while dsu[x] != x {
                dsu[x] = dsu[dsu[x]];
                x = dsu[x];
            }
            x
        }
        for &i in &order {
            if basis_sites.contains(&i) {
                continue;
            }
            let coords = basis_inv.apply_row(f, &universe[i].0);
            let support: Vec<usize> = (0..dim).filter(|&k| !coords[k].is_zero()).collect();
            let roots: HashSet<usize> = support.iter().map(|&s| root(&mut dsu, s)).collect();
            if roots.len() > 1 {
                let anchor = *roots.iter().min().unwrap();
                for r in roots {
                    dsu[r] = anchor;
                }
                extras.push((i, coords));
            }
        }
    }
    // candidate estimate for the cap
    let auts: Vec<u32> = if opts.linear_only {
        vec![0]
    } else {
        (0..f.h()).collect()
    };
    let mut estimate: u128 = auts.len() as u128;
    for &s in &basis_sites {
        estimate = estimate.saturating_mul(allowed[&mask[s]].len() as u128);
    }
    for (s, _) in &extras {
        estimate = estimate.saturating_mul(allowed[&mask[*s]].len() as u128);
    }
    {
        // remaining free scalar components after the extras
        let mut dsu: Vec<usize> = (0..dim).collect();
        fn root(dsu: &mut Vec<usize>, mut x: usize) -> usize {
            while dsu[x] != x {
                dsu[x] = dsu[dsu[x]];
                x = dsu[x];
            }
            x
        }
        for (_, coords) in &extras {
            let sup: Vec<usize> = (0..dim).filter(|&k| !coords[k].is_zero()).collect();
            let anchor = root(&mut dsu, sup[0]);
            for &s in &sup[1..] {
                let r = root(&mut dsu, s);
                dsu[r] = anchor;
            }
        }
        let comps: HashSet<usize> = (0..dim).map(|i| root(&mut dsu, i)).collect();
        let frees = comps.len() as u32 - 1;
        estimate = estimate.saturating_mul((f.q() as u128 - 1).saturating_pow(frees));
    }
    if estimate > opts.candidate_cap {
        return Err(Error::CapExceeded(format!(
            "stabilizer search would enumerate ~{estimate} candidates (cap {})",
            opts.candidate_cap
        )));
    }
    let mut search = StabilizerSearch {
        f,
        dim,
        universe,
        mask,
        by_point: masks,
        basis_sites,
        basis,
        extras,
        allowed,
        found: Vec::new(),
    };
    for aut in auts {
        search.run(aut);
    }
    GroupHandle::from_elements(field.clone(), dim, search.found)
}

/// Brute-force oracle for tiny cases: enumerates every invertible matrix
/// over the field (with automorphism twists unless `linear_only`) and keeps
/// the maps stabilizing each cell. Guarded to q^(d²) ≤ 2²⁴.
pub fn brute_force_stabilizer(
    field: &Arc<Field>,
    dim: usize,
    cells: &[Vec<ProjPoint>],
    linear_only: bool,
) -> Result<GroupHandle> {
    let f = field;
    let q = f.q() as u64;
    let total = (q as u128).checked_pow((dim * dim) as u32);
    if total.is_none_or(|t| t > 1 << 24) {
        return Err(Error::CapExceeded("matrix space too large".into()));
    }
    let total = total.unwrap() as u64;
    let els: Vec<El> = f.elements().collect();
    let masks: HashMap<ProjPoint, u64> = {
        let mut m: HashMap<ProjPoint, u64> = HashMap::new();
        for (ci, cell) in cells.iter().enumerate() {
            for p in cell {
                *m.entry(p.clone()).or_insert(0) |= 1 << ci;
            }
        }
        m
    };
    let auts: Vec<u32> = if linear_only { vec![0] } else { (0..f.h()).collect() };
    let mut found: HashSet<Collineation> = HashSet::new();
    for code in 0..total {
        let mut c = code;
        let mut m = Matrix::zero(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, els[(c % q) as usize]);
                c /= q;
            }
        }
        if m.inverse(f).is_err() {
            continue;
        }
        for &aut in &auts {
            let Ok(g) = Collineation::new(field.clone(), m.clone(), aut) else {
                continue;
            };
            let ok = masks.iter().all(|(p, &msk)| {
                masks.get(&g.apply_point(p)).copied() == Some(msk)
            });
            if ok {
                found.insert(g);
            }
        }
    }
    GroupHandle::from_elements(field.clone(), dim, found.into_iter().collect())
}

/// All unitary transvections x ↦ x + μ·h(x,c)·c of a Hermitian space whose
/// center c is a singular point orthogonal to `fixed` (including c = the
/// fixed point itself), for every nonzero trace-zero μ. Every returned map
/// is an isometry fixing `fixed`.
pub fn unitary_transvections_fixing(
    space: &Arc<PolarSpace>,
    fixed: usize,
) -> Result<Vec<Collineation>> {
    let form = space.form();
    if form.kind != crate::geometry::FormKind::Hermitian {
        return Err(Error::Precondition(
            "transvections are built for Hermitian spaces".into(),
        ));
    }
    let f = space.field();
    let dim = form.dim;
    let mus: Vec<El> = f
        .elements()
        .filter(|&x| !x.is_zero() && f.add(x, f.conj(x)).is_zero())
        .collect();
    let mut centers: Vec<usize> = space.neighbors(fixed).iter().collect();
    centers.push(fixed);
    let mut out = Vec::new();
    for c_idx in centers {
        let c = &space.point(c_idx).0;
        // column vector G·σ(c)ᵀ gives h(x,c) = x · that column
        let col = form
            .gram()
            .apply_col(f, &c.iter().map(|&x| f.conj(x)).collect::<Vec<_>>());
        for &mu in &mus {
            let mut m = Matrix::identity(dim);
            for i in 0..dim {
                for j in 0..dim {
                    let add = f.mul(mu, f.mul(col[i], c[j]));
                    m.set(i, j, f.add(m.get(i, j), add));
                }
            }
            let g = Collineation::new(f.clone(), m, 0)?;
            debug_assert!(g.preserves_form_scalar(form).is_some());
            debug_assert_eq!(g.apply_point(space.point(fixed)), *space.point(fixed));
            out.push(g);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::PolarFamily;

    fn pt(f: &Field, coords: &[u32]) -> ProjPoint {
        ProjPoint::normalize(
            f,
            &coords
                .iter()
                .map(|&c| f.from_int(c as u64).unwrap())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn collineation_algebra() {
        let f = Field::new(2, 2).unwrap();
        let a = f.generator();
        let mut m1 = Matrix::identity(3);
        m1.set(0, 1, a);
        m1.set(2, 0, El::ONE);
        let g = Collineation::new(f.clone(), m1.clone(), 1).unwrap();
        let h = Collineation::new(f.clone(), m1, 0).unwrap();
        let id = Collineation::identity(f.clone(), 3);
        assert_eq!(g.then(&g.inverse()), id);
        assert_eq!(g.inverse().then(&g), id);
        assert_eq!(
            (g.then(&h)).inverse(),
            h.inverse().then(&g.inverse())
        );
        // composition matches pointwise application
        let v = [El::ONE, a, El::ZERO];
        let via_compose = g.then(&h).apply_vector(&v);
        let stepwise = h.apply_vector(&g.apply_vector(&v));
        assert_eq!(via_compose, stepwise);
        // scalar insensitivity
        let scaled = {
            let mut m = g.matrix().clone();
            for i in 0..3 {
                for j in 0..3 {
                    m.set(i, j, f.mul(a, m.get(i, j)));
                }
            }
            Collineation::new(f.clone(), m, 1).unwrap()
        };
        assert_eq!(scaled, g);
    }

    #[test]
    fn triangle_stabilizer_matches_brute_force() {
        let f = Field::new(2, 1).unwrap();
        let cell = vec![pt(&f, &[1, 0, 0]), pt(&f, &[0, 1, 0]), pt(&f, &[0, 0, 1])];
        let fast =
            setwise_stabilizer(&f, 3, &[cell.clone()], StabilizerOptions::default()).unwrap();
        let slow = brute_force_stabilizer(&f, 3, &[cell], false).unwrap();
        // the triangle's stabilizer in PGL(3,2) permutes the three points
        assert_eq!(fast.order(), 6);
        assert_eq!(fast.order(), slow.order());
        for g in slow.elements() {
            assert!(fast.contains(g));
        }
    }

    #[test]
    fn frame_stabilizer_matches_brute_force() {
        let f = Field::new(2, 1).unwrap();
        let cell = vec![
            pt(&f, &[1, 0, 0]),
            pt(&f, &[0, 1, 0]),
            pt(&f, &[0, 0, 1]),
            pt(&f, &[1, 1, 1]),
        ];
        let fast =
            setwise_stabilizer(&f, 3, &[cell.clone()], StabilizerOptions::default()).unwrap();
        let slow = brute_force_stabilizer(&f, 3, &[cell], false).unwrap();
        // a projective frame's stabilizer realizes every permutation: S₄
        assert_eq!(fast.order(), 24);
        assert_eq!(fast.order(), slow.order());
    }

    #[test]
    fn semilinear_stabilizer_matches_brute_force_over_gf4() {
        let f = Field::new(2, 2).unwrap();
        let cell = vec![pt(&f, &[1, 0]), pt(&f, &[0, 1]), pt(&f, &[1, 1])];
        let fast =
            setwise_stabilizer(&f, 2, &[cell.clone()], StabilizerOptions::default()).unwrap();
        let slow = brute_force_stabilizer(&f, 2, &[cell.clone()], false).unwrap();
        assert_eq!(fast.order(), slow.order());
        for g in slow.elements() {
            assert!(fast.contains(g));
        }
        // and the linear-only variant
        let fast_lin = setwise_stabilizer(
            &f,
            2,
            &[cell.clone()],
            StabilizerOptions {
                linear_only: true,
                ..Default::default()
            },
        )
        .unwrap();
        let slow_lin = brute_force_stabilizer(&f, 2, &[cell], true).unwrap();
        assert_eq!(fast_lin.order(), slow_lin.order());
        assert!(fast_lin.order() < fast.order());
    }

    #[test]
    fn two_cell_stabilizer_matches_brute_force() {
        // stabilizing {e1, e2} and {e3, (1,1,1)} separately is strictly
        // finer than stabilizing their union
        let f = Field::new(2, 1).unwrap();
        let c1 = vec![pt(&f, &[1, 0, 0]), pt(&f, &[0, 1, 0])];
        let c2 = vec![pt(&f, &[0, 0, 1]), pt(&f, &[1, 1, 1])];
        let cells = vec![c1.clone(), c2.clone()];
        let fast = setwise_stabilizer(&f, 3, &cells, StabilizerOptions::default()).unwrap();
        let slow = brute_force_stabilizer(&f, 3, &cells, false).unwrap();
        assert_eq!(fast.order(), slow.order());
        let union = setwise_stabilizer(
            &f,
            3,
            &[[c1, c2].concat()],
            StabilizerOptions::default(),
        )
        .unwrap();
        assert!(fast.order() < union.order());
    }

    #[test]
    fn nonspanning_cells_are_rejected() {
        let f = Field::new(2, 1).unwrap();
        let cell = vec![pt(&f, &[1, 0, 0]), pt(&f, &[0, 1, 0])];
        let err = setwise_stabilizer(&f, 3, &[cell], StabilizerOptions::default());
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn candidate_cap_rejects_full_point_set() {
        let space = PolarSpace::standard(PolarFamily::H, 6, 2).unwrap();
        let cell: Vec<ProjPoint> = space.points().to_vec();
        let err = setwise_stabilizer(
            space.field(),
            6,
            &[cell],
            StabilizerOptions::default(),
        );
        assert!(matches!(err, Err(Error::CapExceeded(_))));
    }

    #[test]
    fn point_stabilizer_is_transitive_on_neighbors() {
        let space = PolarSpace::standard(PolarFamily::H, 6, 2).unwrap();
        let p = 0;
        let gens = unitary_transvections_fixing(&space, p).unwrap();
        // transvections with centers through p's perp fix p and preserve the
        // form exactly; their group acts on the 180 neighbors of p
        let nb = space.neighbors(p);
        let start = nb.iter().next().unwrap();
        let orbit = orbit_of(&space, &gens, start).unwrap();
        let on_neighbors = orbit.intersection(nb);
        assert_eq!(on_neighbors.count(), 180);
        assert!(!orbit.contains(p));
    }

    #[test]
    fn orbit_partition_of_form_preserving_pair() {
        // orbits of a small explicit group on W(3,2): the symplectic form is
        // preserved by permutation-like generators; orbit sizes sum to n
        let space = PolarSpace::standard(PolarFamily::W, 4, 2).unwrap();
        let f = space.field();
        // coordinate swap (e1↔e2, e3↔e4) preserves antidiagonal symplectic
        let mut swap = Matrix::zero(4, 4);
        swap.set(0, 1, El::ONE);
        swap.set(1, 0, El::ONE);
        swap.set(2, 3, El::ONE);
        swap.set(3, 2, El::ONE);
        let g = Collineation::new(f.clone(), swap, 0).unwrap();
        assert!(g.preserves_form_scalar(space.form()).is_some());
        let group =
            GroupHandle::from_generators(f.clone(), 4, vec![g], 100).unwrap();
        assert_eq!(group.order(), 2);
        let orbits = group.orbits(&space).unwrap();
        assert_eq!(orbits.sizes().iter().sum::<usize>(), 15);
        assert!(orbits.count() < 15);
        // representatives are the least member of each orbit
        for (i, &r) in orbits.representatives().iter().enumerate() {
            assert_eq!(orbits.orbit(i)[0], r);
            assert_eq!(orbits.orbit_index_of(r), i);
        }
    }

    #[test]
    fn group_closure_and_verification() {
        let f = Field::new(3, 1).unwrap();
        // order-3 cyclic shift on coordinates
        let mut shift = Matrix::zero(3, 3);
        shift.set(0, 1, El::ONE);
        shift.set(1, 2, El::ONE);
        shift.set(2, 0, El::ONE);
        let g = Collineation::new(f.clone(), shift, 0).unwrap();
        let group = GroupHandle::from_generators(f.clone(), 3, vec![g.clone()], 10).unwrap();
        assert_eq!(group.order(), 3);
        // cap errors out when too small
        let err = GroupHandle::from_generators(f.clone(), 3, vec![g], 2);
        assert!(matches!(err, Err(Error::CapExceeded(_))));
    }
}
