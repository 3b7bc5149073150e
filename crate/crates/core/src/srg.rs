//! Strongly-regular-graph analytics: closed-form parameters for polar-space
//! collinearity graphs, exhaustive parameter measurement, and exact spectral
//! membership tests.
//!
//! Everything is exact: integer parameters, rational eigenvector tests,
//! never floating point.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::polar::PolarSpace;
use num::bigint::Sign;
use num::{BigInt, BigRational, BigUint, One, Zero};

/// The eight parameters of a strongly regular graph, validated on
/// construction: eigenvalue equation, Delsarte-style identities, and the
/// multiplicity/trace equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrgParams {
    pub n: BigInt,
    pub k: BigInt,
    pub lambda: BigInt,
    pub mu: BigInt,
    pub theta_plus: BigInt,
    pub theta_minus: BigInt,
    pub m_r: BigInt,
    pub m_s: BigInt,
}

impl SrgParams {
    /// Validates the full parameter set; every identity must hold exactly.
    pub fn new(
        n: BigInt,
        k: BigInt,
        lambda: BigInt,
        mu: BigInt,
        theta_plus: BigInt,
        theta_minus: BigInt,
        m_r: BigInt,
        m_s: BigInt,
    ) -> Result<SrgParams> {
        let p = SrgParams {
            n,
            k,
            lambda,
            mu,
            theta_plus,
            theta_minus,
            m_r,
            m_s,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let SrgParams {
            n,
            k,
            lambda,
            mu,
            theta_plus: r,
            theta_minus: s,
            m_r,
            m_s,
        } = self;
        let checks: [(&str, BigInt, BigInt); 6] = [
            (
                "eigenvalues solve x^2-(λ-μ)x-(k-μ)=0",
                (r * r) - (lambda - mu) * r - (k - mu),
                BigInt::zero(),
            ),
            (
                "nμ = (k−θ⁺)(k−θ⁻)",
                n * mu,
                (k - r) * (k - s),
            ),
            ("θ⁺θ⁻ = μ−k", r * s, mu - k),
            (
                "k(k−λ−1) = (n−k−1)μ",
                k * (k - lambda - 1),
                (n - k - BigInt::one()) * mu,
            ),
            (
                "m_r + m_s + 1 = n",
                m_r + m_s + 1,
                n.clone(),
            ),
            (
                "k + m_r θ⁺ + m_s θ⁻ = 0",
                k + m_r * r + m_s * s,
                BigInt::zero(),
            ),
        ];
        for (name, lhs, rhs) in checks {
            if lhs != rhs {
                return Err(Error::Construction(format!(
                    "SRG identity failed: {name} ({lhs} ≠ {rhs})"
                )));
            }
        }
        let s_neg = (s * s) - (self.lambda.clone() - &self.mu) * s - (&self.k - &self.mu);
        if !s_neg.is_zero() {
            return Err(Error::Construction(
                "θ⁻ does not solve the eigenvalue equation".into(),
            ));
        }
        Ok(())
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "srg(n={}, k={}, λ={}, μ={}; θ⁺={}, θ⁻={}; m_r={}, m_s={})",
            self.n,
            self.k,
            self.lambda,
            self.mu,
            self.theta_plus,
            self.theta_minus,
            self.m_r,
            self.m_s
        )
    }
}

/// p^{h·half/2} as an exact rational (negative exponents allowed);
/// h·half must be even.
pub fn rational_q_power(p: u64, h: u32, half: i64) -> BigRational {
    let twice = h as i64 * half;
    assert!(twice % 2 == 0, "non-integral exponent");
    let mag = BigInt::from(p).pow((twice.unsigned_abs() / 2) as u32);
    if twice >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

fn to_integer(name: &str, v: &BigRational) -> Result<BigInt> {
    if v.denom().is_one() {
        Ok(v.numer().clone())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} is not an integer: {v}"
        )))
    }
}

/// Closed-form SRG parameters of the collinearity graph of a polar space of
/// rank `d` and type `2e = twoe` over the field `f` (rank ≥ 2 required: the
/// rank-1 graph is empty and not strongly regular).
pub fn params_from_table(f: &Field, d: usize, twoe: u32) -> Result<SrgParams> {
    if d < 2 {
        return Err(Error::Precondition(format!(
            "rank {d} space has no strongly regular collinearity graph"
        )));
    }
    let (p, h) = (f.p() as u64, f.h());
    let d = d as i64;
    let e2 = twoe as i64;
    let q = rational_q_power(p, h, 2);
    let one = BigRational::one();
    let qe = |half: i64| rational_q_power(p, h, half);

    // q^{d-1+e}, q^{d-2+e}, q^{d-1+e} companions, all in half-exponent units
    let n = (qe(2 * (d - 1) + e2) + &one) * (qe(2 * d) - &one) / (&q - &one);
    let k = &q * (qe(2 * (d - 2) + e2) + &one) * (qe(2 * (d - 1)) - &one) / (&q - &one);
    let lambda = qe(2 * (d - 1))
        - &one
        + &q * (qe(2 * (d - 2) + e2) + &one) * (qe(2 * (d - 2)) - &one) / (&q - &one);
    let mu = (qe(2 * (d - 2) + e2) + &one) * (qe(2 * (d - 1)) - &one) / (&q - &one);
    let theta_plus = qe(2 * (d - 1)) - &one;
    let theta_minus = -&one - qe(2 * (d - 2) + e2);
    let denom = (&q - &one) * (qe(e2 - 2) + &one);
    let m_r = qe(e2) * (qe(2 * d) - &one) * (qe(2 * (d - 2) + e2) + &one) / &denom;
    let m_s = &q * (qe(2 * (d - 1)) - &one) * (qe(2 * (d - 1) + e2) + &one) / &denom;

    SrgParams::new(
        to_integer("n", &n)?,
        to_integer("k", &k)?,
        to_integer("λ", &lambda)?,
        to_integer("μ", &mu)?,
        to_integer("θ⁺", &theta_plus)?,
        to_integer("θ⁻", &theta_minus)?,
        to_integer("m_r", &m_r)?,
        to_integer("m_s", &m_s)?,
    )
}

/// Table parameters of a built polar space.
pub fn params_of_space(space: &PolarSpace) -> Result<SrgParams> {
    params_from_table(space.field(), space.rank(), space.twoe())
}

/// Measures the parameters of the collinearity subgraph induced on a point
/// set, erroring when that graph is not strongly regular.
pub fn params_of_induced(space: &PolarSpace, set: &BitSet) -> Result<SrgParams> {
    let reindex: Vec<usize> = set.iter().collect();
    let lookup: std::collections::HashMap<usize, usize> =
        reindex.iter().enumerate().map(|(l, &g)| (g, l)).collect();
    let mut adj = vec![BitSet::new(reindex.len()); reindex.len()];
    for (l, &g) in reindex.iter().enumerate() {
        for nb in space.neighbors(g).intersection(set).iter() {
            adj[l].insert(lookup[&nb]);
        }
    }
    params_from_adjacency(&adj)
}

/// Measures SRG parameters exhaustively from an adjacency structure,
/// erroring when the graph is not strongly regular.
pub fn params_from_adjacency(adj: &[BitSet]) -> Result<SrgParams> {
    let n = adj.len();
    if n == 0 {
        return Err(Error::Precondition("empty graph".into()));
    }
    let k = adj[0].count();
    for (i, row) in adj.iter().enumerate() {
        if row.count() != k {
            return Err(Error::Precondition(format!(
                "graph is not regular: degree {} at vertex {i}, {} at vertex 0",
                row.count(),
                k
            )));
        }
    }
    if k == 0 || k >= n - 1 {
        return Err(Error::Precondition(format!(
            "degree k={k} violates 0 < k < n−1 = {}",
            n - 1
        )));
    }
    let mut lambda: Option<usize> = None;
    let mut mu: Option<usize> = None;
    for i in 0..n {
        for j in i + 1..n {
            let common = adj[i].intersection_count(&adj[j]);
            let slot = if adj[i].contains(j) { &mut lambda } else { &mut mu };
            match slot {
                None => *slot = Some(common),
                Some(v) if *v == common => {}
                Some(v) => {
                    return Err(Error::Precondition(format!(
                        "graph is not strongly regular: common-neighbor count \
                         {common} at pair ({i},{j}) differs from {v}"
                    )));
                }
            }
        }
    }
    let lambda = lambda.ok_or_else(|| Error::Precondition("complete graph".into()))?;
    let mu = mu.ok_or_else(|| Error::Precondition("graph has no non-adjacent pairs".into()))?;

    let (n, k, lambda, mu) = (
        BigInt::from(n),
        BigInt::from(k),
        BigInt::from(lambda),
        BigInt::from(mu),
    );
    let diff = &lambda - &mu;
    let disc: BigInt = &diff * &diff + BigInt::from(4) * (&k - &mu);
    let disc_u: BigUint = disc
        .to_biguint()
        .ok_or_else(|| Error::Construction("negative eigenvalue discriminant".into()))?;
    let root = disc_u.sqrt();
    if &root * &root != disc_u {
        return Err(Error::Construction(
            "eigenvalue discriminant is not a perfect square (conference-graph case out of scope)"
                .into(),
        ));
    }
    let root = BigInt::from_biguint(Sign::Plus, root);
    let two = BigInt::from(2);
    let theta_plus = (&diff + &root) / &two;
    let theta_minus = (&diff - &root) / &two;
    if (&diff + &root) % &two != BigInt::zero() {
        return Err(Error::Construction("non-integral eigenvalues".into()));
    }
    // trace equations pin the multiplicities
    let gap = &theta_plus - &theta_minus;
    let m_r_num = -(&k + (&n - BigInt::one()) * &theta_minus);
    if (&m_r_num % &gap) != BigInt::zero() {
        return Err(Error::Construction("non-integral multiplicity".into()));
    }
    let m_r = m_r_num / &gap;
    let m_s = &n - BigInt::one() - &m_r;
    SrgParams::new(n, k, lambda, mu, theta_plus, theta_minus, m_r, m_s)
}

/// Measured parameters of a polar space's collinearity graph.
pub fn params_from_graph(space: &PolarSpace) -> Result<SrgParams> {
    let adj: Vec<BitSet> = (0..space.n()).map(|i| space.neighbors(i).clone()).collect();
    params_from_adjacency(&adj)
}

/// A·v over the collinearity graph, exactly.
pub fn adjacency_apply(space: &PolarSpace, v: &[BigRational]) -> Vec<BigRational> {
    assert_eq!(v.len(), space.n());
    (0..space.n())
        .map(|i| {
            let mut acc = BigRational::zero();
            for j in space.neighbors(i).iter() {
                if !v[j].is_zero() {
                    acc += &v[j];
                }
            }
            acc
        })
        .collect()
}

/// Collapses the collinearity graph over a partition of the points, checking
/// it is equitable: entry `[i][j]` is the number of neighbors in cell j of
/// any point of cell i, verified constant across cell i.  Orbit partitions
/// of collineation subgroups are always equitable; the check guards against
/// partitions that are not.
pub fn quotient_matrix(space: &PolarSpace, cells: &[Vec<usize>]) -> Result<Vec<Vec<i64>>> {
    let mut cell_of = vec![usize::MAX; space.n()];
    for (ci, cell) in cells.iter().enumerate() {
        for &x in cell {
            cell_of[x] = ci;
        }
    }
    if cell_of.iter().any(|&c| c == usize::MAX) {
        return Err(Error::Precondition(
            "partition does not cover every point".into(),
        ));
    }
    let mut quotient = vec![vec![0i64; cells.len()]; cells.len()];
    for (ci, cell) in cells.iter().enumerate() {
        for (pos, &x) in cell.iter().enumerate() {
            let mut counts = vec![0i64; cells.len()];
            for nb in space.neighbors(x).iter() {
                counts[cell_of[nb]] += 1;
            }
            if pos == 0 {
                quotient[ci] = counts;
            } else if quotient[ci] != counts {
                return Err(Error::Precondition(format!(
                    "partition is not equitable: cell {ci} has points with \
                     differing neighbor profiles"
                )));
            }
        }
    }
    Ok(quotient)
}

/// Exact test of A·v′ = θ·v′ with v′ = v − (Σv/n)·j, done without division:
/// n·((Av)_i − θ·v_i) = (Σv)(k − θ) for every i.
pub fn eigencheck(space: &PolarSpace, v: &[BigRational], theta: &BigInt) -> bool {
    assert_eq!(v.len(), space.n());
    let n = BigInt::from(space.n());
    let k = BigInt::from(space.degree(0));
    let sigma: BigRational = v.iter().sum();
    let rhs = &sigma * BigRational::from_integer(&k - theta);
    let theta_r = BigRational::from_integer(theta.clone());
    let av = adjacency_apply(space, v);
    let n_r = BigRational::from_integer(n);
    (0..space.n()).all(|i| &n_r * (&av[i] - &theta_r * &v[i]) == rhs)
}

/// Integer fast path of [`eigencheck`] for 0–1 vectors.
pub fn eigencheck_01(space: &PolarSpace, set: &BitSet, theta: &BigInt) -> bool {
    let n = BigInt::from(space.n());
    let k = BigInt::from(space.degree(0));
    let sigma = BigInt::from(set.count());
    let rhs = &sigma * (&k - theta);
    (0..space.n()).all(|i| {
        let av = BigInt::from(space.neighbors(i).intersection_count(set));
        let vi = if set.contains(i) {
            BigInt::one()
        } else {
            BigInt::zero()
        };
        &n * (av - theta * vi) == rhs
    })
}
