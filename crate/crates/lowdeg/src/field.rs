//! Arithmetic in GF(p^s) with a canonical element encoding.
//!
//! Elements are handles carrying their canonical index (the base-p value of
//! the polynomial-basis coordinate vector) plus a fingerprint of the owning
//! field, so that mixing elements of different fields panics instead of
//! silently producing garbage. All arithmetic goes through [`Field`], which
//! precomputes full operation tables for small orders.

use thiserror::Error;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Orders up to this limit get dense add/mul/inv tables.
const TABLE_ORDER_LIMIT: u64 = 256;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {0} exceeds the supported maximum {MAX_FIELD_ORDER}")]
    OrderTooLarge(u64),
    #[error("no built-in irreducible modulus for p={p}, s={s}")]
    NoBuiltinModulus { p: u64, s: u32 },
    #[error("modulus must be monic of degree s with coefficients in [0, p)")]
    MalformedModulus,
    #[error("modulus is reducible over GF(p)")]
    ReducibleModulus,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element index {idx} out of range for field of order {q}")]
    IndexOutOfRange { idx: u64, q: u64 },
}

/// An element of a [`Field`], identified by its canonical index.
///
/// The index is the base-p encoding of the polynomial-basis coordinates
/// (low digit = constant coefficient), a bijection onto `[0, q)`. Equality
/// is structural; elements are immutable values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe {
    idx: u32,
    key: u32,
}

impl Fe {
    /// Canonical index of this element in `[0, q)`.
    #[inline]
    pub fn index(self) -> u64 {
        self.idx as u64
    }

    #[inline]
    pub(crate) fn key(self) -> u32 {
        self.key
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.idx == 0
    }
}

/// Irreducible moduli (coefficients low-to-high, monic) for every extension
/// field of order at most 64. Prime fields use direct residue arithmetic.
const BUILTIN_MODULI: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
];

/// A concrete finite field GF(p^s).
///
/// Immutable after construction; safe to share across threads. For orders
/// up to 256 all operations are table lookups.
pub struct Field {
    p: u64,
    s: u32,
    q: u64,
    modulus: Vec<u64>,
    key: u32,
    add_t: Option<Vec<u32>>,
    mul_t: Option<Vec<u32>>,
    neg_t: Option<Vec<u32>>,
    inv_t: Option<Vec<u32>>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("s", &self.s)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Builds GF(p^s) using the built-in modulus table.
    pub fn new(p: u64, s: u32) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if s == 1 {
            // Prime field; the degree-1 modulus x is a placeholder and is
            // never used for reduction.
            return Self::build(p, 1, vec![0, 1]);
        }
        let modulus = BUILTIN_MODULI
            .iter()
            .find(|&&(bp, bs, _)| bp == p && bs == s)
            .map(|&(_, _, m)| m.to_vec())
            .ok_or(FieldError::NoBuiltinModulus { p, s })?;
        Self::build(p, s, modulus)
    }

    /// Builds GF(p^s) with an explicit monic irreducible modulus
    /// (coefficients low-to-high, length s+1).
    pub fn with_modulus(p: u64, s: u32, modulus: &[u64]) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Self::build(p, s, modulus.to_vec())
    }

    fn build(p: u64, s: u32, modulus: Vec<u64>) -> Result<Field, FieldError> {
        if s == 0 {
            return Err(FieldError::MalformedModulus);
        }
        let q = (0..s).try_fold(1u64, |acc, _| {
            acc.checked_mul(p).filter(|&v| v <= MAX_FIELD_ORDER)
        });
        let q = q.ok_or(FieldError::OrderTooLarge(u64::MAX))?;
        if modulus.len() != s as usize + 1
            || modulus[s as usize] != 1
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(FieldError::MalformedModulus);
        }
        if s >= 2 && !poly_is_irreducible(p, &modulus) {
            return Err(FieldError::ReducibleModulus);
        }
        let key = spec_key(p, s, &modulus);
        let mut field = Field {
            p,
            s,
            q,
            modulus,
            key,
            add_t: None,
            mul_t: None,
            neg_t: None,
            inv_t: None,
        };
        if q <= TABLE_ORDER_LIMIT {
            field.build_tables();
        } else if s != 1 {
            // Extension fields beyond the table limit are not needed at desk
            // scale and would make every multiplication a polynomial product.
            return Err(FieldError::OrderTooLarge(q));
        }
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        let mut neg = vec![0u32; q];
        for a in 0..q as u64 {
            for b in a..q as u64 {
                let sum = self.add_raw(a, b);
                add[a as usize * q + b as usize] = sum as u32;
                add[b as usize * q + a as usize] = sum as u32;
                let prod = self.mul_raw(a, b);
                mul[a as usize * q + b as usize] = prod as u32;
                mul[b as usize * q + a as usize] = prod as u32;
                if sum == 0 {
                    neg[a as usize] = b as u32;
                    neg[b as usize] = a as u32;
                }
            }
        }
        let mut inv = vec![u32::MAX; q];
        for a in 1..q as u64 {
            if inv[a as usize] != u32::MAX {
                continue;
            }
            for b in 1..q as u64 {
                if mul[a as usize * q + b as usize] == 1 {
                    inv[a as usize] = b as u32;
                    inv[b as usize] = a as u32;
                    break;
                }
            }
        }
        self.add_t = Some(add);
        self.mul_t = Some(mul);
        self.neg_t = Some(neg);
        self.inv_t = Some(inv);
    }

    // Raw index arithmetic, used to build tables and for large prime fields.

    fn add_raw(&self, a: u64, b: u64) -> u64 {
        if self.s == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.digits_to_index(&sum)
    }

    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if self.s == 1 {
            return (a * b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s = self.s as usize;
        let mut prod = vec![0u64; 2 * s - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // Reduce by the monic modulus.
        for i in (s..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &mj) in self.modulus.iter().enumerate().take(s) {
                let k = i - s + j;
                prod[k] = (prod[k] + c * (self.p - mj) % self.p) % self.p;
            }
        }
        self.digits_to_index(&prod[..s])
    }

    fn digits(&self, mut idx: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.s as usize);
        for _ in 0..self.s {
            out.push(idx % self.p);
            idx /= self.p;
        }
        out
    }

    fn digits_to_index(&self, digits: &[u64]) -> u64 {
        digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.p + d)
    }

    // Accessors.

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Field order q = p^s.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, low-to-high (length s+1, monic).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub(crate) fn key(&self) -> u32 {
        self.key
    }

    /// The element with the given canonical index.
    pub fn element(&self, idx: u64) -> Result<Fe, FieldError> {
        if idx >= self.q {
            return Err(FieldError::IndexOutOfRange { idx, q: self.q });
        }
        Ok(self.el(idx))
    }

    /// The element with the given canonical index; panics out of range.
    #[inline]
    pub fn el(&self, idx: u64) -> Fe {
        assert!(idx < self.q, "element index {idx} out of range ({})", self.q);
        Fe {
            idx: idx as u32,
            key: self.key,
        }
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        self.el(0)
    }

    #[inline]
    pub fn one(&self) -> Fe {
        self.el(1)
    }

    /// All q elements in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.q).map(move |i| self.el(i))
    }

    /// Polynomial-basis coordinates of `a`, low-to-high (length s).
    pub fn coeffs(&self, a: Fe) -> Vec<u64> {
        self.check(a);
        self.digits(a.idx as u64)
    }

    /// Element with the given polynomial-basis coordinates.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fe, FieldError> {
        if coeffs.len() != self.s as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::MalformedModulus);
        }
        Ok(self.el(self.digits_to_index(coeffs)))
    }

    #[inline]
    fn check(&self, a: Fe) {
        assert!(
            a.key == self.key,
            "element from a different field spec (key {:#x} vs {:#x})",
            a.key,
            self.key
        );
    }

    /// Sum. Panics if either element belongs to a different field.
    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.check(a);
        self.check(b);
        let idx = match &self.add_t {
            Some(t) => t[a.idx as usize * self.q as usize + b.idx as usize] as u64,
            None => self.add_raw(a.idx as u64, b.idx as u64),
        };
        self.el(idx)
    }

    /// Additive inverse.
    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.check(a);
        let idx = match &self.neg_t {
            Some(t) => t[a.idx as usize] as u64,
            None => (self.p - a.idx as u64) % self.p,
        };
        self.el(idx)
    }

    /// Difference a - b.
    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    /// Product. Panics if either element belongs to a different field.
    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.check(a);
        self.check(b);
        let idx = match &self.mul_t {
            Some(t) => t[a.idx as usize * self.q as usize + b.idx as usize] as u64,
            None => self.mul_raw(a.idx as u64, b.idx as u64),
        };
        self.el(idx)
    }

    /// Multiplicative inverse; `DivisionByZero` on the zero element.
    pub fn inv(&self, a: Fe) -> Result<Fe, FieldError> {
        self.check(a);
        if a.idx == 0 {
            return Err(FieldError::DivisionByZero);
        }
        match &self.inv_t {
            Some(t) => Ok(self.el(t[a.idx as usize] as u64)),
            None => Ok(self.pow(a, self.q - 2)),
        }
    }

    /// a^e by repeated squaring, with 0^0 = 1.
    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        self.check(a);
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }
}

/// Stable fingerprint of (p, s, modulus); FNV-1a folded to 32 bits.
fn spec_key(p: u64, s: u32, modulus: &[u64]) -> u32 {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |v: u64| {
        for byte in v.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(p);
    eat(s as u64);
    for &c in modulus {
        eat(c);
    }
    (h ^ (h >> 32)) as u32
}

/// Irreducibility over GF(p) by trial division with all monic polynomials of
/// degree at most deg/2. Degrees here never exceed 6.
fn poly_is_irreducible(p: u64, modulus: &[u64]) -> bool {
    let deg = modulus.len() - 1;
    for div_deg in 1..=deg / 2 {
        // Enumerate monic divisors: div_deg lower coefficients, base p.
        let count = p.pow(div_deg as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(div_deg + 1);
            let mut c = code;
            for _ in 0..div_deg {
                div.push(c % p);
                c /= p;
            }
            div.push(1);
            if poly_rem_is_zero(p, modulus, &div) {
                return false;
            }
        }
    }
    true
}

/// Whether the monic `divisor` divides `poly` exactly over GF(p).
fn poly_rem_is_zero(p: u64, poly: &[u64], divisor: &[u64]) -> bool {
    let mut rem = poly.to_vec();
    let dd = divisor.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - dd;
        if lead != 0 {
            for (j, &c) in divisor.iter().enumerate() {
                let k = shift + j;
                rem[k] = (rem[k] + (p - c % p) % p * lead) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Field {
        Field::new(2, 2).unwrap()
    }

    fn gf5() -> Field {
        Field::new(5, 1).unwrap()
    }

    #[test]
    fn gf5_add_mul_inv_pow() {
        let f = gf5();
        let (a, b) = (f.el(3), f.el(4));
        assert_eq!(f.add(a, b), f.el(2));
        assert_eq!(f.mul(f.el(2), f.el(3)), f.one());
        assert_eq!(f.inv(f.el(2)).unwrap(), f.el(3));
        assert_eq!(f.pow(f.el(2), 4), f.one());
        assert_eq!(f.inv(f.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn gf4_generator_arithmetic() {
        // omega = x (index 2), omega + 1 = x + 1 (index 3).
        let f = gf4();
        let w = f.el(2);
        assert_eq!(f.add(w, w), f.zero());
        assert_eq!(f.mul(w, w), f.el(3));
        assert_eq!(f.inv(w).unwrap(), f.el(3));
        assert_eq!(f.pow(w, 3), f.one());
        assert_eq!(f.pow(w, 4), w);
    }

    #[test]
    fn identity_cases() {
        for field in [gf4(), gf5(), Field::new(3, 2).unwrap()] {
            for a in field.elements() {
                assert_eq!(field.add(a, field.zero()), a);
                assert_eq!(field.mul(a, field.one()), a);
            }
        }
    }

    #[test]
    fn enumerate_order_and_roundtrip() {
        let f = gf4();
        let all: Vec<u64> = f.elements().map(|e| e.index()).collect();
        assert_eq!(all, vec![0, 1, 2, 3]);
        for i in 0..f.q() {
            assert_eq!(f.element(i).unwrap().index(), i);
        }
        assert!(f.element(4).is_err());
        // Coordinates of omega + 1 over GF(4): [1, 1].
        assert_eq!(f.coeffs(f.el(3)), vec![1, 1]);
        assert_eq!(f.from_coeffs(&[1, 1]).unwrap(), f.el(3));
    }

    fn all_specs_up_to_64() -> Vec<Field> {
        let mut out = Vec::new();
        for (p, s) in [
            (2, 1),
            (3, 1),
            (5, 1),
            (7, 1),
            (11, 1),
            (13, 1),
            (17, 1),
            (61, 1),
            (2, 2),
            (2, 3),
            (2, 4),
            (2, 5),
            (2, 6),
            (3, 2),
            (3, 3),
            (5, 2),
            (7, 2),
        ] {
            out.push(Field::new(p, s).unwrap());
        }
        out
    }

    #[test]
    fn field_axioms_exhaustive_small_sampled_large() {
        for f in all_specs_up_to_64() {
            let q = f.q();
            let els: Vec<Fe> = f.elements().collect();
            // Inverses and Frobenius closure, always exhaustive.
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                assert_eq!(f.pow(a, q), a, "a^q = a fails in q={q}");
            }
            // Associativity + distributivity: full triple check for q <= 16,
            // a strided sample above.
            let stride = if q <= 16 { 1 } else { (q / 11).max(1) };
            for a in els.iter().step_by(stride as usize) {
                for b in els.iter().step_by(stride as usize) {
                    assert_eq!(f.add(*a, *b), f.add(*b, *a));
                    assert_eq!(f.mul(*a, *b), f.mul(*b, *a));
                    for c in els.iter().step_by(stride as usize) {
                        assert_eq!(f.add(f.add(*a, *b), *c), f.add(*a, f.add(*b, *c)));
                        assert_eq!(f.mul(f.mul(*a, *b), *c), f.mul(*a, f.mul(*b, *c)));
                        assert_eq!(
                            f.mul(*a, f.add(*b, *c)),
                            f.add(f.mul(*a, *b), f.mul(*a, *c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn large_prime_field() {
        let f = Field::new(1021, 1).unwrap();
        assert_eq!(f.q(), 1021);
        let a = f.el(1000);
        assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        assert_eq!(f.pow(a, 1021), a);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert!(matches!(
            Field::new(11, 2).unwrap_err(),
            FieldError::NoBuiltinModulus { .. }
        ));
        // x^2 + 1 = (x+1)^2 over GF(2).
        assert_eq!(
            Field::with_modulus(2, 2, &[1, 0, 1]).unwrap_err(),
            FieldError::ReducibleModulus
        );
        assert_eq!(
            Field::with_modulus(2, 2, &[1, 1]).unwrap_err(),
            FieldError::MalformedModulus
        );
    }

    #[test]
    #[should_panic(expected = "different field spec")]
    fn spec_mismatch_panics() {
        let f4 = gf4();
        let f5 = gf5();
        let _ = f4.add(f4.one(), f5.one());
    }
}
