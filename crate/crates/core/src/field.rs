//! Table-driven arithmetic in small finite fields GF(p^h).
//!
//! Elements are opaque indices: `0` is the zero element, `1` is the
//! multiplicative identity, and index `1 + e` is `g^e` for the canonical
//! primitive element `g`. Multiplication and inversion run on exp/log
//! tables; addition runs on a precomputed q×q table for small fields and on
//! coefficient vectors otherwise.
//!
//! The modulus polynomial defaults to a built-in (Conway) polynomial for each
//! supported `(p, h)`; an explicit override is accepted as long as it is
//! monic and irreducible. When the residue class of `x` is primitive it is
//! chosen as `g`, so for GF(4) the labels `0, 1, a, a^2` map to indices
//! `0, 1, 2, 3`.

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Default upper bound on the field order.
pub const DEFAULT_ORDER_CAP: u32 = 1 << 16;

/// Largest order for which the full q×q addition table is materialized.
const ADD_TABLE_CAP: u64 = 512;

/// An element of a [`Field`], represented by its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct El(pub u32);

impl El {
    pub const ZERO: El = El(0);
    pub const ONE: El = El(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A finite field GF(p^h) with table-driven arithmetic.
#[derive(Clone)]
pub struct Field {
    p: u32,
    h: u32,
    q: u32,
    modulus: Vec<u32>,
    /// Coefficient vector (low degree first, length h) of each element index.
    polys: Vec<Vec<u32>>,
    index_of: HashMap<Vec<u32>, u32>,
    /// `log[i]` for `i >= 1`: the exponent e with g^e = element i.
    log: Vec<u32>,
    /// `exp[e]` = index of g^e for e in 0..q-1.
    exp: Vec<u32>,
    /// Flat q×q addition table when the order is small enough, else empty.
    add_table: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.h == other.h && self.modulus == other.modulus
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec_string())
    }
}

/// Built-in default modulus polynomials (coefficients low degree first).
fn builtin_modulus(p: u32, h: u32) -> Option<Vec<u32>> {
    let m: &[u32] = match (p, h) {
        (2, 1) => &[1, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (2, 7) => &[1, 1, 0, 0, 0, 0, 0, 1],
        (2, 8) => &[1, 0, 1, 1, 1, 0, 0, 0, 1],
        (3, 1) => &[1, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (5, 1) => &[3, 1],
        (5, 2) => &[2, 4, 1],
        (7, 1) => &[4, 1],
        (7, 2) => &[3, 6, 1],
        _ => return None,
    };
    Some(m.to_vec())
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---- dense polynomial helpers over GF(p), coefficients low degree first ----

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_mul(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for k in 0..=dm {
                let idx = shift + k;
                let sub = (lead * m[k]) % p;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Enumerates all monic polynomials of the given degree over GF(p).
fn monic_polys(p: u32, degree: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let count = (p as u64).pow(degree as u32);
    for code in 0..count {
        let mut c = code;
        let mut poly = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            poly.push((c % p as u64) as u32);
            c /= p as u64;
        }
        poly.push(1);
        out.push(poly);
    }
    out
}

fn poly_is_irreducible(p: u32, m: &[u32]) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for cand in monic_polys(p, d) {
            if poly_rem(p, m, &cand).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Constructs GF(p^h) with the built-in default modulus.
    pub fn new(p: u32, h: u32) -> Result<Arc<Field>> {
        Self::with_modulus_and_cap(p, h, None, DEFAULT_ORDER_CAP)
    }

    /// Constructs GF(p^h) with an explicit modulus polynomial
    /// (coefficients low degree first, length h+1, monic).
    pub fn with_modulus(p: u32, h: u32, modulus: Vec<u32>) -> Result<Arc<Field>> {
        Self::with_modulus_and_cap(p, h, Some(modulus), DEFAULT_ORDER_CAP)
    }

    pub fn with_modulus_and_cap(
        p: u32,
        h: u32,
        modulus: Option<Vec<u32>>,
        cap: u32,
    ) -> Result<Arc<Field>> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
        }
        if h == 0 {
            return Err(Error::InvalidParameter("h must be at least 1".into()));
        }
        let q128 = (p as u128).pow(h);
        if q128 > cap as u128 {
            return Err(Error::CapExceeded(format!(
                "field order {q128} exceeds cap {cap}"
            )));
        }
        let q = q128 as u32;
        let modulus = match modulus {
            Some(m) => m,
            None => builtin_modulus(p, h).ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "no built-in modulus for GF({p}^{h}); supply one explicitly"
                ))
            })?,
        };
        if modulus.len() != h as usize + 1 {
            return Err(Error::InvalidParameter(format!(
                "modulus must have degree {h} (got {} coefficients)",
                modulus.len()
            )));
        }
        if modulus.last() != Some(&1) {
            return Err(Error::InvalidParameter("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParameter(format!(
                "modulus coefficients must lie in [0, {p})"
            )));
        }
        if !poly_is_irreducible(p, &modulus) {
            return Err(Error::InvalidParameter(
                "modulus polynomial is reducible".into(),
            ));
        }

        // Find the canonical primitive element: the class of x when it is
        // primitive (always the case for the built-in moduli), otherwise the
        // first primitive element in integer-encoding order.
        let order_of = |poly: &[u32]| -> u32 {
            // multiplicative order of a nonzero residue
            let mut acc = poly.to_vec();
            let mut ord = 1u32;
            while !(acc.len() == 1 && acc[0] == 1) {
                acc = poly_rem(p, &poly_mul(p, &acc, poly), &modulus);
                ord += 1;
                debug_assert!(ord <= q);
            }
            ord
        };

        let x_poly: Vec<u32> = if h == 1 {
            // the class of x is the residue of -modulus[0]
            vec![(p - modulus[0] % p) % p]
        } else {
            vec![0, 1]
        };

        let mut generator = None;
        if !x_poly.is_empty() && order_of(&x_poly) == q - 1 {
            generator = Some(x_poly);
        } else {
            // enumerate nonzero residues in integer-encoding order
            'outer: for code in 1..q as u64 {
                let mut c = code;
                let mut poly = Vec::with_capacity(h as usize);
                for _ in 0..h {
                    poly.push((c % p as u64) as u32);
                    c /= p as u64;
                }
                poly_trim(&mut poly);
                if poly.is_empty() {
                    continue;
                }
                if order_of(&poly) == q - 1 {
                    generator = Some(poly);
                    break 'outer;
                }
            }
        }
        let generator =
            generator.ok_or_else(|| Error::Construction("no primitive element found".into()))?;

        // Build tables. polys[0] = 0, polys[1 + e] = g^e (padded to length h).
        let pad = |mut v: Vec<u32>| -> Vec<u32> {
            v.resize(h as usize, 0);
            v
        };
        let mut polys: Vec<Vec<u32>> = Vec::with_capacity(q as usize);
        polys.push(pad(vec![]));
        let mut acc = vec![1u32];
        for _ in 0..q - 1 {
            polys.push(pad(acc.clone()));
            acc = poly_rem(p, &poly_mul(p, &acc, &generator), &modulus);
        }
        debug_assert_eq!(acc, vec![1u32], "generator order must be q-1");

        let mut index_of = HashMap::with_capacity(q as usize);
        for (i, poly) in polys.iter().enumerate() {
            if index_of.insert(poly.clone(), i as u32).is_some() {
                return Err(Error::Construction(
                    "duplicate element in power table".into(),
                ));
            }
        }

        let mut log = vec![0u32; q as usize];
        let mut exp = vec![0u32; (q - 1) as usize];
        for e in 0..q - 1 {
            exp[e as usize] = 1 + e;
            log[(1 + e) as usize] = e;
        }

        let mut field = Field {
            p,
            h,
            q,
            modulus,
            polys,
            index_of,
            log,
            exp,
            add_table: vec![],
        };

        if (q as u64) <= ADD_TABLE_CAP {
            let mut table = vec![0u32; (q as usize) * (q as usize)];
            for a in 0..q {
                for b in 0..=a {
                    let sum = field.add_by_poly(El(a), El(b));
                    table[(a * q + b) as usize] = sum.0;
                    table[(b * q + a) as usize] = sum.0;
                }
            }
            field.add_table = table;
        }

        Ok(Arc::new(field))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    /// Field order q = p^h.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> El {
        El::ZERO
    }

    pub fn one(&self) -> El {
        El::ONE
    }

    /// The canonical primitive element (the multiplicative identity in GF(2)).
    pub fn generator(&self) -> El {
        El(self.exp[1 % (self.q as usize - 1).max(1)])
    }

    /// All elements, zero first, then ascending powers of the generator.
    pub fn elements(&self) -> impl Iterator<Item = El> {
        (0..self.q).map(El)
    }

    /// Coefficient vector of an element (low degree first, length h).
    pub fn poly(&self, a: El) -> &[u32] {
        &self.polys[a.0 as usize]
    }

    /// Element with the given coefficient vector.
    pub fn from_poly(&self, coeffs: &[u32]) -> Result<El> {
        if coeffs.len() > self.h as usize {
            return Err(Error::InvalidParameter(format!(
                "coefficient vector longer than h = {}",
                self.h
            )));
        }
        if coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParameter(format!(
                "coefficients must lie in [0, {})",
                self.p
            )));
        }
        let mut v = coeffs.to_vec();
        v.resize(self.h as usize, 0);
        self.index_of
            .get(&v)
            .copied()
            .map(El)
            .ok_or_else(|| Error::Construction("coefficient vector not in field table".into()))
    }

    /// Element from its integer encoding sum(c_i p^i) of coefficients.
    pub fn from_int(&self, mut code: u64) -> Result<El> {
        if code >= (self.p as u64).pow(self.h) {
            return Err(Error::InvalidParameter(format!(
                "integer encoding {code} out of range for order {}",
                self.q
            )));
        }
        let mut coeffs = Vec::with_capacity(self.h as usize);
        for _ in 0..self.h {
            coeffs.push((code % self.p as u64) as u32);
            code /= self.p as u64;
        }
        self.from_poly(&coeffs)
    }

    fn add_by_poly(&self, a: El, b: El) -> El {
        let pa = &self.polys[a.0 as usize];
        let pb = &self.polys[b.0 as usize];
        let sum: Vec<u32> = pa
            .iter()
            .zip(pb)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        El(self.index_of[&sum])
    }

    pub fn add(&self, a: El, b: El) -> El {
        if self.add_table.is_empty() {
            self.add_by_poly(a, b)
        } else {
            El(self.add_table[(a.0 * self.q + b.0) as usize])
        }
    }

    pub fn neg(&self, a: El) -> El {
        if a.is_zero() {
            return a;
        }
        if self.p == 2 {
            return a;
        }
        // -g^e = g^(e + (q-1)/2) in odd characteristic
        let half = (self.q - 1) / 2;
        let e = self.log[a.0 as usize];
        El(self.exp[((e + half) % (self.q - 1)) as usize])
    }

    pub fn sub(&self, a: El, b: El) -> El {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: El, b: El) -> El {
        if a.is_zero() || b.is_zero() {
            return El::ZERO;
        }
        let e = (self.log[a.0 as usize] + self.log[b.0 as usize]) % (self.q - 1);
        El(self.exp[e as usize])
    }

    pub fn inv(&self, a: El) -> Result<El> {
        if a.is_zero() {
            return Err(Error::DivisionByZero { q: self.q });
        }
        let e = self.log[a.0 as usize];
        Ok(El(self.exp[((self.q - 1 - e) % (self.q - 1)) as usize]))
    }

    pub fn div(&self, a: El, b: El) -> Result<El> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a` raised to an integer power (negative exponents invert).
    pub fn pow(&self, a: El, n: i64) -> Result<El> {
        if a.is_zero() {
            return match n.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(El::ZERO),
                std::cmp::Ordering::Equal => Ok(El::ONE),
                std::cmp::Ordering::Less => Err(Error::DivisionByZero { q: self.q }),
            };
        }
        let m = (self.q - 1) as i64;
        let e = (self.log[a.0 as usize] as i64 * (n % m)).rem_euclid(m);
        Ok(El(self.exp[e as usize]))
    }

    /// Frobenius power a -> a^(p^k).
    pub fn frobenius(&self, a: El, k: u32) -> El {
        if a.is_zero() {
            return a;
        }
        let m = (self.q - 1) as u64;
        let mut mult = 1u64;
        for _ in 0..(k % self.h.max(1)) {
            mult = (mult * self.p as u64) % m;
        }
        let e = (self.log[a.0 as usize] as u64 * mult) % m;
        El(self.exp[e as usize])
    }

    /// The conjugation x -> x^(p^(h/2)) of a quadratic extension.
    ///
    /// Callers must ensure `h` is even; this is validated once when a
    /// Hermitian form is constructed.
    pub fn conj(&self, a: El) -> El {
        debug_assert!(self.h % 2 == 0, "conjugation needs a quadratic extension");
        self.frobenius(a, self.h / 2)
    }

    /// True if the element lies in the prime subfield.
    pub fn in_prime_field(&self, a: El) -> bool {
        self.frobenius(a, 1) == a
    }

    /// Human-readable label: decimal residues for prime fields, else
    /// `0`, `1`, `a`, `a^2`, ... powers of the generator.
    pub fn label(&self, a: El) -> String {
        if self.h == 1 {
            return self.polys[a.0 as usize][0].to_string();
        }
        match a.0 {
            0 => "0".into(),
            1 => "1".into(),
            2 => "a".into(),
            e => format!("a^{}", e - 1),
        }
    }

    pub fn parse_label(&self, s: &str) -> Result<El> {
        let s = s.trim();
        if self.h == 1 {
            let v: u32 = s
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad element label `{s}`")))?;
            if v >= self.p {
                return Err(Error::InvalidParameter(format!(
                    "residue {v} out of range for GF({})",
                    self.p
                )));
            }
            return self.from_poly(&[v]);
        }
        match s {
            "0" => Ok(El::ZERO),
            "1" => Ok(El::ONE),
            "a" => Ok(El(2)),
            _ => {
                let e: u32 = s
                    .strip_prefix("a^")
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| {
                        Error::InvalidParameter(format!("bad element label `{s}`"))
                    })?;
                let e = e % (self.q - 1);
                Ok(El(self.exp[e as usize]))
            }
        }
    }

    /// Serialization form `GF(p^h; modulus=c0,c1,...,ch)`.
    pub fn spec_string(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("GF({}^{}; modulus={})", self.p, self.h, coeffs.join(","))
    }

    /// Parses the [`spec_string`](Self::spec_string) form.
    pub fn from_spec_string(s: &str) -> Result<Arc<Field>> {
        let bad = || Error::InvalidParameter(format!("bad field spec `{s}`"));
        let inner = s
            .trim()
            .strip_prefix("GF(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (ph, modpart) = inner.split_once(';').ok_or_else(bad)?;
        let (p, h) = ph.trim().split_once('^').ok_or_else(bad)?;
        let p: u32 = p.trim().parse().map_err(|_| bad())?;
        let h: u32 = h.trim().parse().map_err(|_| bad())?;
        let coeffs = modpart.trim().strip_prefix("modulus=").ok_or_else(bad)?;
        let modulus: Vec<u32> = coeffs
            .split(',')
            .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        Field::with_modulus(p, h, modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, h: u32) -> Arc<Field> {
        Field::new(p, h).unwrap()
    }

    #[test]
    fn gf4_layout_matches_power_labels() {
        let f = gf(2, 2);
        assert_eq!(f.q(), 4);
        let a = El(2);
        let a2 = El(3);
        assert_eq!(f.generator(), a);
        assert_eq!(f.label(a), "a");
        assert_eq!(f.label(a2), "a^2");
        assert_eq!(f.mul(a, a), a2);
        assert_eq!(f.mul(a, a2), El::ONE);
        // x^2 + x + 1 = 0 means a^2 = a + 1
        assert_eq!(f.add(a, El::ONE), a2);
        assert_eq!(f.add(a, a), El::ZERO);
        assert_eq!(f.conj(a), a2);
        assert_eq!(f.conj(a2), a);
        assert_eq!(f.conj(El::ONE), El::ONE);
        // norm x * conj(x) lands in GF(2)
        for x in f.elements() {
            let n = f.mul(x, f.conj(x));
            assert!(n == El::ZERO || n == El::ONE);
        }
    }

    #[test]
    fn gf9_field_axioms_exhaustive() {
        let f = gf(3, 2);
        assert_eq!(f.q(), 9);
        let els: Vec<El> = f.elements().collect();
        for &a in &els {
            assert_eq!(f.add(a, El::ZERO), a);
            assert_eq!(f.mul(a, El::ONE), a);
            assert_eq!(f.add(a, f.neg(a)), El::ZERO);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), El::ONE);
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(
                        f.mul(a, f.add(b, c)),
                        f.add(f.mul(a, b), f.mul(a, c)),
                        "distributivity"
                    );
                }
            }
        }
    }

    #[test]
    fn gf9_conjugation_is_cubing_and_fixes_prime_field() {
        let f = gf(3, 2);
        let mut fixed = 0;
        for x in f.elements() {
            let c = f.conj(x);
            assert_eq!(c, f.pow(x, 3).unwrap());
            assert_eq!(f.conj(c), x, "involution");
            if f.in_prime_field(x) {
                assert_eq!(c, x);
                fixed += 1;
            }
        }
        assert_eq!(fixed, 3);
    }

    #[test]
    fn gf16_associativity_exhaustive() {
        let f = gf(2, 4);
        let els: Vec<El> = f.elements().collect();
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                }
            }
        }
        // generator has full order
        let g = f.generator();
        let mut acc = El::ONE;
        for e in 1..15 {
            acc = f.mul(acc, g);
            assert_ne!(acc, El::ONE, "order of g divides {e} < 15");
        }
        assert_eq!(f.mul(acc, g), El::ONE);
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x+1)^2 over GF(2)
        let err = Field::with_modulus(2, 2, vec![1, 0, 1]).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn non_primitive_irreducible_modulus_still_works() {
        // x^4+x^3+x^2+x+1 is irreducible over GF(2) but its root has order 5
        let f = Field::with_modulus(2, 4, vec![1, 1, 1, 1, 1]).unwrap();
        assert_eq!(f.q(), 16);
        // the table generator must still have order 15
        let g = f.generator();
        let mut seen = std::collections::HashSet::new();
        let mut acc = El::ONE;
        for _ in 0..15 {
            assert!(seen.insert(acc));
            acc = f.mul(acc, g);
        }
        assert_eq!(acc, El::ONE);
        // and x itself does not generate
        let x = f.from_poly(&[0, 1]).unwrap();
        assert_eq!(f.pow(x, 5).unwrap(), El::ONE);
    }

    #[test]
    fn pow_handles_negative_exponents() {
        let f = gf(3, 2);
        let g = f.generator();
        assert_eq!(f.pow(g, -1).unwrap(), f.inv(g).unwrap());
        assert_eq!(f.pow(g, -8).unwrap(), El::ONE);
        assert!(f.pow(El::ZERO, -2).is_err());
        assert_eq!(f.pow(El::ZERO, 0).unwrap(), El::ONE);
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative() {
        let f = gf(2, 4);
        let els: Vec<El> = f.elements().collect();
        for &a in &els {
            for &b in &els {
                assert_eq!(
                    f.frobenius(f.add(a, b), 1),
                    f.add(f.frobenius(a, 1), f.frobenius(b, 1))
                );
                assert_eq!(
                    f.frobenius(f.mul(a, b), 3),
                    f.mul(f.frobenius(a, 3), f.frobenius(b, 3))
                );
            }
            assert_eq!(f.frobenius(a, 4), a, "frobenius^h is the identity");
        }
    }

    #[test]
    fn labels_round_trip() {
        for f in [gf(2, 2), gf(3, 2), gf(2, 3), gf(5, 1)] {
            for x in f.elements() {
                let lab = f.label(x);
                assert_eq!(f.parse_label(&lab).unwrap(), x, "label {lab}");
            }
        }
    }

    #[test]
    fn spec_string_round_trip() {
        for f in [gf(2, 2), gf(3, 2), gf(2, 1), gf(7, 1)] {
            let s = f.spec_string();
            let g = Field::from_spec_string(&s).unwrap();
            assert_eq!(*f, *g);
        }
        assert_eq!(gf(2, 2).spec_string(), "GF(2^2; modulus=1,1,1)");
    }

    #[test]
    fn order_cap_enforced() {
        assert!(matches!(
            Field::with_modulus_and_cap(2, 8, None, 200),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn from_int_round_trips_coefficients() {
        let f = gf(3, 2);
        for code in 0..9u64 {
            let e = f.from_int(code).unwrap();
            let poly = f.poly(e);
            assert_eq!(code, poly[0] as u64 + 3 * poly[1] as u64);
        }
        assert!(f.from_int(9).is_err());
    }
}
