//! Prime field F_p, its quadratic extension GF(p^2) = F_p(t) with t^2 = delta,
//! and towers GF(p^(2m)) used as splitting fields.
//!
//! GF(p^2) is always realized as `F_p[t]/(t^2 - delta)` where `delta` is the
//! least positive quadratic nonresidue mod p, so element printing and
//! enumeration order are reproducible across runs. Elements are kept reduced:
//! both coordinates in `[0, p)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::unipoly::UniPoly;

/// Element of GF(p^2), `c0 + c1*t`, both coordinates reduced mod p.
///
/// The element lies in the prime field iff `c1 == 0`. The derived ordering
/// ((c0, c1) lexicographic) is the canonical order used everywhere results
/// are sorted.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp2Element {
    c0: u64,
    c1: u64,
}

impl Fp2Element {
    pub fn c0(&self) -> u64 {
        self.c0
    }

    pub fn c1(&self) -> u64 {
        self.c1
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }

    /// True iff the element lies in the prime field F_p.
    pub fn is_in_prime_field(&self) -> bool {
        self.c1 == 0
    }

    /// Canonical text encoding `c0+c1*t` (decimal, no spaces), shared by all
    /// output formats.
    pub fn encode(&self) -> String {
        format!("{}+{}*t", self.c0, self.c1)
    }
}

impl fmt::Debug for Fp2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*t", self.c0, self.c1)
    }
}

impl fmt::Display for Fp2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*t", self.c0, self.c1)
    }
}

impl Serialize for Fp2Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.encode())
    }
}

impl<'de> Deserialize<'de> for Fp2Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_element_raw(&s).map_err(serde::de::Error::custom)
    }
}

/// Parse `c0+c1*t` (or a bare integer as an F_p shortcut) without reducing.
fn parse_element_raw(s: &str) -> Result<Fp2Element, Error> {
    let bad = || Error::BadElementEncoding(s.to_string());
    let body = s.trim();
    if let Some((lhs, rhs)) = body.split_once('+') {
        let c1 = rhs.strip_suffix("*t").ok_or_else(bad)?;
        let c0 = lhs.parse::<u64>().map_err(|_| bad())?;
        let c1 = c1.parse::<u64>().map_err(|_| bad())?;
        Ok(Fp2Element { c0, c1 })
    } else {
        let c0 = body.parse::<u64>().map_err(|_| bad())?;
        Ok(Fp2Element { c0, c1: 0 })
    }
}

/// Arithmetic context shared by all element operations.
///
/// A context is a pure value: two machine words. It is `Copy`, immutable, and
/// safe to share across threads.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    p: u64,
    delta: u64,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^2), t^2 = {}", self.p, self.delta)
    }
}

#[inline]
fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

/// Bezout inverse of `a` mod `p` for `0 < a < p`.
fn invmod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i128) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl FieldCtx {
    /// Construct the context for F_p and GF(p^2), p an odd prime >= 7.
    ///
    /// `delta` is the smallest positive quadratic nonresidue mod p (Euler
    /// criterion), so the construction is deterministic for fixed p.
    pub fn new(p: u64) -> Result<FieldCtx, Error> {
        if p >= 1 << 31 {
            return Err(Error::PrimeTooLarge(p));
        }
        if p < 7 || p % 2 == 0 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        let mut delta = 2;
        while powmod(delta, (p - 1) / 2, p) != p - 1 {
            delta += 1;
        }
        Ok(FieldCtx { p, delta })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    /// p^2, the field size. Fits in u64 because p < 2^31.
    pub fn q(&self) -> u64 {
        self.p * self.p
    }

    pub fn element(&self, c0: u64, c1: u64) -> Fp2Element {
        Fp2Element {
            c0: c0 % self.p,
            c1: c1 % self.p,
        }
    }

    /// Embed an integer, reducing mod p.
    pub fn scalar(&self, k: u64) -> Fp2Element {
        Fp2Element { c0: k % self.p, c1: 0 }
    }

    /// Embed a signed integer, reducing into `[0, p)`.
    pub fn scalar_i128(&self, k: i128) -> Fp2Element {
        Fp2Element {
            c0: k.rem_euclid(self.p as i128) as u64,
            c1: 0,
        }
    }

    pub fn zero(&self) -> Fp2Element {
        Fp2Element { c0: 0, c1: 0 }
    }

    pub fn one(&self) -> Fp2Element {
        Fp2Element { c0: 1, c1: 0 }
    }

    /// The generator t of GF(p^2) over F_p (t^2 = delta).
    pub fn t(&self) -> Fp2Element {
        Fp2Element { c0: 0, c1: 1 }
    }

    #[inline]
    pub fn add(&self, x: Fp2Element, y: Fp2Element) -> Fp2Element {
        let p = self.p;
        let c0 = x.c0 + y.c0;
        let c1 = x.c1 + y.c1;
        Fp2Element {
            c0: if c0 >= p { c0 - p } else { c0 },
            c1: if c1 >= p { c1 - p } else { c1 },
        }
    }

    #[inline]
    pub fn sub(&self, x: Fp2Element, y: Fp2Element) -> Fp2Element {
        Fp2Element {
            c0: submod(x.c0, y.c0, self.p),
            c1: submod(x.c1, y.c1, self.p),
        }
    }

    #[inline]
    pub fn neg(&self, x: Fp2Element) -> Fp2Element {
        Fp2Element {
            c0: if x.c0 == 0 { 0 } else { self.p - x.c0 },
            c1: if x.c1 == 0 { 0 } else { self.p - x.c1 },
        }
    }

    /// (x0 + x1 t)(y0 + y1 t) = x0 y0 + delta x1 y1 + (x0 y1 + x1 y0) t.
    ///
    /// All coordinates are below p < 2^31, so the accumulated sums stay below
    /// 2^63 and a single reduction per coordinate suffices.
    #[inline]
    pub fn mul(&self, x: Fp2Element, y: Fp2Element) -> Fp2Element {
        let p = self.p;
        let cross = x.c1 * y.c1 % p;
        Fp2Element {
            c0: (x.c0 * y.c0 + self.delta * cross) % p,
            c1: (x.c0 * y.c1 + x.c1 * y.c0) % p,
        }
    }

    #[inline]
    pub fn square(&self, x: Fp2Element) -> Fp2Element {
        self.mul(x, x)
    }

    /// Multiplicative inverse via the conjugate and a Bezout inverse of the
    /// norm in F_p.
    pub fn inv(&self, x: Fp2Element) -> Result<Fp2Element, Error> {
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let p = self.p;
        let norm = submod(x.c0 * x.c0 % p, self.delta * (x.c1 * x.c1 % p) % p, p);
        let ninv = invmod(norm, p);
        Ok(Fp2Element {
            c0: x.c0 * ninv % p,
            c1: if x.c1 == 0 { 0 } else { (p - x.c1) * ninv % p },
        })
    }

    /// x^p, the nontrivial Galois automorphism: t^p = -t, so
    /// `(c0 + c1 t)^p = c0 - c1 t`.
    #[inline]
    pub fn frobenius(&self, x: Fp2Element) -> Fp2Element {
        Fp2Element {
            c0: x.c0,
            c1: if x.c1 == 0 { 0 } else { self.p - x.c1 },
        }
    }

    pub fn pow(&self, x: Fp2Element, mut e: u64) -> Fp2Element {
        let mut base = x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Enumerate GF(p^2) in the fixed order 0, 1, ..., p-1, t, t+1, ...,
    /// i.e. index n maps to (n mod p) + (n div p) t. This is the order used to
    /// pick interpolation points, so it is part of the deterministic contract.
    pub fn enumerate(&self) -> impl Iterator<Item = Fp2Element> + '_ {
        let p = self.p;
        (0..p * p).map(move |n| Fp2Element {
            c0: n % p,
            c1: n / p,
        })
    }

    /// Parse the `c0+c1*t` encoding; a bare integer is accepted as an F_p
    /// shortcut. Coordinates are reduced mod p.
    pub fn parse_element(&self, s: &str) -> Result<Fp2Element, Error> {
        let raw = parse_element_raw(s)?;
        Ok(self.element(raw.c0, raw.c1))
    }
}

/// Field abstraction shared by GF(p^2) and its extensions, in context-passing
/// style: elements are plain data, the context owns the arithmetic.
pub trait Field: Clone + PartialEq + Send + Sync {
    type Elem: Clone + Eq + Ord + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Result<Self::Elem, Error>;
    fn is_zero(&self, x: &Self::Elem) -> bool;

    /// The characteristic p.
    fn characteristic(&self) -> u64;

    /// The field size q (may exceed u64 for towers).
    fn order(&self) -> BigUint;

    /// Embed an integer scalar, reducing mod p.
    fn scalar(&self, k: u64) -> Self::Elem;

    /// Uniform random element.
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem;

    fn pow(&self, x: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn pow_big(&self, x: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, x);
            }
        }
        acc
    }
}

impl Field for FieldCtx {
    type Elem = Fp2Element;

    fn zero(&self) -> Fp2Element {
        FieldCtx::zero(self)
    }

    fn one(&self) -> Fp2Element {
        FieldCtx::one(self)
    }

    fn add(&self, x: &Fp2Element, y: &Fp2Element) -> Fp2Element {
        FieldCtx::add(self, *x, *y)
    }

    fn sub(&self, x: &Fp2Element, y: &Fp2Element) -> Fp2Element {
        FieldCtx::sub(self, *x, *y)
    }

    fn neg(&self, x: &Fp2Element) -> Fp2Element {
        FieldCtx::neg(self, *x)
    }

    fn mul(&self, x: &Fp2Element, y: &Fp2Element) -> Fp2Element {
        FieldCtx::mul(self, *x, *y)
    }

    fn inv(&self, x: &Fp2Element) -> Result<Fp2Element, Error> {
        FieldCtx::inv(self, *x)
    }

    fn is_zero(&self, x: &Fp2Element) -> bool {
        x.is_zero()
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn order(&self) -> BigUint {
        BigUint::from(self.p) * BigUint::from(self.p)
    }

    fn scalar(&self, k: u64) -> Fp2Element {
        FieldCtx::scalar(self, k)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Fp2Element {
        Fp2Element {
            c0: rng.gen_range(0..self.p),
            c1: rng.gen_range(0..self.p),
        }
    }
}

/// The prime subfield F_p viewed as a field context of its own. Elements are
/// [`Fp2Element`]s with `c1 == 0`; only sampling and the order differ from the
/// quadratic extension.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeSubfield(pub FieldCtx);

impl Field for PrimeSubfield {
    type Elem = Fp2Element;

    fn zero(&self) -> Fp2Element {
        self.0.zero()
    }

    fn one(&self) -> Fp2Element {
        self.0.one()
    }

    fn add(&self, x: &Fp2Element, y: &Fp2Element) -> Fp2Element {
        self.0.add(*x, *y)
    }

    fn sub(&self, x: &Fp2Element, y: &Fp2Element) -> Fp2Element {
        self.0.sub(*x, *y)
    }

    fn neg(&self, x: &Fp2Element) -> Fp2Element {
        self.0.neg(*x)
    }

    fn mul(&self, x: &Fp2Element, y: &Fp2Element) -> Fp2Element {
        self.0.mul(*x, *y)
    }

    fn inv(&self, x: &Fp2Element) -> Result<Fp2Element, Error> {
        self.0.inv(*x)
    }

    fn is_zero(&self, x: &Fp2Element) -> bool {
        x.is_zero()
    }

    fn characteristic(&self) -> u64 {
        self.0.p
    }

    fn order(&self) -> BigUint {
        BigUint::from(self.0.p)
    }

    fn scalar(&self, k: u64) -> Fp2Element {
        self.0.scalar(k)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Fp2Element {
        Fp2Element {
            c0: rng.gen_range(0..self.0.p),
            c1: 0,
        }
    }
}

/// Element of GF(p^(2m)): a length-m coefficient vector over GF(p^2) in the
/// power basis of the extension generator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtElement(Vec<Fp2Element>);

impl ExtElement {
    pub fn coeffs(&self) -> &[Fp2Element] {
        &self.0
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

struct ExtInner {
    base: FieldCtx,
    m: usize,
    /// Monic irreducible of degree m over GF(p^2), length m+1.
    modulus: Vec<Fp2Element>,
}

/// GF(p^(2m)) = GF(p^2)[z]/(modulus), the splitting fields of degree-10
/// polynomials (m <= 30 there). Cheap to clone and share across threads.
#[derive(Clone)]
pub struct ExtFieldCtx {
    inner: Arc<ExtInner>,
}

impl PartialEq for ExtFieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.inner.base == other.inner.base
            && self.inner.m == other.inner.m
            && self.inner.modulus == other.inner.modulus
    }
}

impl fmt::Debug for ExtFieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}), degree {} over GF(p^2)",
            self.inner.base.p,
            2 * self.inner.m,
            self.inner.m
        )
    }
}

impl ExtFieldCtx {
    /// Build GF(p^(2m)) with a verified-irreducible modulus found by seeded
    /// random search. m = 1 yields the trivial extension with modulus z.
    pub fn new(base: FieldCtx, m: usize, seed: u64) -> Result<ExtFieldCtx, Error> {
        assert!(m >= 1, "extension degree must be >= 1");
        if m == 1 {
            return Ok(ExtFieldCtx {
                inner: Arc::new(ExtInner {
                    base,
                    m: 1,
                    modulus: vec![base.zero(), base.one()],
                }),
            });
        }
        let mut rng = crate::par::rng_for(seed, &[0x657874, base.p, m as u64]);
        for _ in 0..4096 {
            let mut coeffs: Vec<Fp2Element> =
                (0..m).map(|_| Field::sample(&base, &mut rng)).collect();
            coeffs.push(base.one());
            let cand = UniPoly::new(base, coeffs);
            if cand.is_irreducible()? {
                return Ok(ExtFieldCtx {
                    inner: Arc::new(ExtInner {
                        base,
                        m,
                        modulus: cand.coeffs().to_vec(),
                    }),
                });
            }
        }
        Err(Error::RetriesExhausted("irreducible modulus search"))
    }

    pub fn base(&self) -> FieldCtx {
        self.inner.base
    }

    pub fn m(&self) -> usize {
        self.inner.m
    }

    pub fn modulus(&self) -> &[Fp2Element] {
        &self.inner.modulus
    }

    /// Constant-coefficient injection of GF(p^2).
    pub fn embed(&self, x: Fp2Element) -> ExtElement {
        let mut v = vec![self.inner.base.zero(); self.inner.m];
        v[0] = x;
        ExtElement(v)
    }

    /// Inverse of `embed` when the element lies in the image.
    pub fn to_base(&self, x: &ExtElement) -> Option<Fp2Element> {
        if x.0[1..].iter().all(|c| c.is_zero()) {
            Some(x.0[0])
        } else {
            None
        }
    }

    fn reduce(&self, mut raw: Vec<Fp2Element>) -> ExtElement {
        let base = self.inner.base;
        let m = self.inner.m;
        let modulus = &self.inner.modulus;
        for i in (m..raw.len()).rev() {
            let c = raw[i];
            if c.is_zero() {
                continue;
            }
            raw[i] = base.zero();
            for (j, &mc) in modulus[..m].iter().enumerate() {
                raw[i - m + j] = base.sub(raw[i - m + j], base.mul(c, mc));
            }
        }
        raw.truncate(m);
        ExtElement(raw)
    }
}

impl Field for ExtFieldCtx {
    type Elem = ExtElement;

    fn zero(&self) -> ExtElement {
        ExtElement(vec![self.inner.base.zero(); self.inner.m])
    }

    fn one(&self) -> ExtElement {
        self.embed(self.inner.base.one())
    }

    fn add(&self, x: &ExtElement, y: &ExtElement) -> ExtElement {
        let base = self.inner.base;
        ExtElement(
            x.0.iter()
                .zip(&y.0)
                .map(|(a, b)| base.add(*a, *b))
                .collect(),
        )
    }

    fn sub(&self, x: &ExtElement, y: &ExtElement) -> ExtElement {
        let base = self.inner.base;
        ExtElement(
            x.0.iter()
                .zip(&y.0)
                .map(|(a, b)| base.sub(*a, *b))
                .collect(),
        )
    }

    fn neg(&self, x: &ExtElement) -> ExtElement {
        let base = self.inner.base;
        ExtElement(x.0.iter().map(|a| base.neg(*a)).collect())
    }

    fn mul(&self, x: &ExtElement, y: &ExtElement) -> ExtElement {
        let base = self.inner.base;
        let m = self.inner.m;
        let mut raw = vec![base.zero(); 2 * m - 1];
        for (i, a) in x.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.0.iter().enumerate() {
                raw[i + j] = base.add(raw[i + j], base.mul(*a, *b));
            }
        }
        self.reduce(raw)
    }

    fn inv(&self, x: &ExtElement) -> Result<ExtElement, Error> {
        if Field::is_zero(self, x) {
            return Err(Error::ZeroInverse);
        }
        let base = self.inner.base;
        let xp = UniPoly::new(base, x.0.clone());
        let modulus = UniPoly::new(base, self.inner.modulus.clone());
        let (g, s, _) = crate::unipoly::ext_gcd(&xp, &modulus)?;
        // modulus irreducible and x nonzero of lower degree, so g is a unit
        debug_assert_eq!(g.degree(), Some(0));
        let ginv = base.inv(*g.leading_coeff().expect("nonzero gcd"))?;
        let mut v: Vec<Fp2Element> = s.coeffs().iter().map(|c| base.mul(*c, ginv)).collect();
        v.resize(self.inner.m, base.zero());
        Ok(ExtElement(v))
    }

    fn is_zero(&self, x: &ExtElement) -> bool {
        x.0.iter().all(|c| c.is_zero())
    }

    fn characteristic(&self) -> u64 {
        self.inner.base.p
    }

    fn order(&self) -> BigUint {
        BigUint::from(self.inner.base.p).pow(2 * self.inner.m as u32)
    }

    fn scalar(&self, k: u64) -> ExtElement {
        self.embed(self.inner.base.scalar(k))
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> ExtElement {
        ExtElement(
            (0..self.inner.m)
                .map(|_| Field::sample(&self.inner.base, rng))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn make_field_ctx_picks_least_nonresidue() {
        // 3^8 = 6561 = -1 mod 17 by direct modular exponentiation
        let f17 = FieldCtx::new(17).unwrap();
        assert_eq!(f17.delta(), 3);
        assert_eq!(powmod(3, 8, 17), 16);
        // squares mod 7 are {1, 2, 4}; 3 is the least nonresidue
        let f7 = FieldCtx::new(7).unwrap();
        assert_eq!(f7.delta(), 3);
    }

    #[test]
    fn make_field_ctx_rejects_bad_input() {
        assert!(matches!(FieldCtx::new(4), Err(Error::InvalidPrime(4))));
        assert!(matches!(FieldCtx::new(9), Err(Error::InvalidPrime(9))));
        assert!(matches!(FieldCtx::new(5), Err(Error::InvalidPrime(5))));
        assert!(matches!(FieldCtx::new(2), Err(Error::InvalidPrime(2))));
    }

    #[test]
    fn delta_never_a_square_small_primes() {
        for p in [7u64, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97] {
            let f = FieldCtx::new(p).unwrap();
            for x in 0..p {
                assert_ne!(x * x % p, f.delta(), "delta is a square mod {p}");
            }
        }
    }

    #[test]
    fn frobenius_negates_t() {
        let f = FieldCtx::new(17).unwrap();
        let x = f.element(5, 9);
        assert_eq!(f.frobenius(x), f.element(5, 17 - 9));
        // frobenius is x -> x^p
        assert_eq!(f.frobenius(x), f.pow(x, 17));
    }

    #[test]
    fn inverse_of_t() {
        let f = FieldCtx::new(17).unwrap();
        let t = f.t();
        let ti = f.inv(t).unwrap();
        assert_eq!(f.mul(t, ti), f.one());
        assert!(matches!(f.inv(f.zero()), Err(Error::ZeroInverse)));
    }

    #[test]
    fn pow_group_order() {
        let f = FieldCtx::new(17).unwrap();
        for x in f.enumerate().skip(1).take(40) {
            assert_eq!(f.pow(x, f.q() - 1), f.one());
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = FieldCtx::new(23).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..64 {
            let x = Field::sample(&f, &mut rng);
            let y = Field::sample(&f, &mut rng);
            assert_eq!(
                f.frobenius(f.add(x, y)),
                f.add(f.frobenius(x), f.frobenius(y))
            );
        }
    }

    #[test]
    fn extension_arithmetic_laws() {
        let base = FieldCtx::new(7).unwrap();
        let ext = ExtFieldCtx::new(base, 2, 1).unwrap();
        // modulus of degree 2 with no roots in GF(49): exhaustive scan
        let modulus = UniPoly::new(base, ext.modulus().to_vec());
        for x in base.enumerate() {
            assert!(!modulus.eval(&x).is_zero(), "modulus has a root in GF(49)");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..32 {
            let (x, y, z) = (
                Field::sample(&ext, &mut rng),
                Field::sample(&ext, &mut rng),
                Field::sample(&ext, &mut rng),
            );
            assert_eq!(ext.mul(&x, &y), ext.mul(&y, &x));
            assert_eq!(
                ext.mul(&ext.mul(&x, &y), &z),
                ext.mul(&x, &ext.mul(&y, &z))
            );
            assert_eq!(
                ext.mul(&x, &ext.add(&y, &z)),
                ext.add(&ext.mul(&x, &y), &ext.mul(&x, &z))
            );
            if !Field::is_zero(&ext, &x) {
                let xi = ext.inv(&x).unwrap();
                assert_eq!(ext.mul(&x, &xi), Field::one(&ext));
            }
        }
    }

    #[test]
    fn trivial_extension_embeds_identically() {
        let base = FieldCtx::new(11).unwrap();
        let ext = ExtFieldCtx::new(base, 1, 0).unwrap();
        assert_eq!(ext.m(), 1);
        let x = base.element(4, 9);
        let e = ext.embed(x);
        assert_eq!(ext.to_base(&e), Some(x));
        assert_eq!(ext.mul(&e, &e), ext.embed(base.mul(x, x)));
    }

    #[test]
    fn frobenius_squared_fixes_embedded_base() {
        let base = FieldCtx::new(7).unwrap();
        let ext = ExtFieldCtx::new(base, 3, 3).unwrap();
        let q = BigUint::from(base.q());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let x = ext.embed(Field::sample(&base, &mut rng));
            assert_eq!(ext.pow_big(&x, &q), x);
        }
    }

    #[test]
    fn element_encoding_round_trip() {
        let f = FieldCtx::new(17).unwrap();
        let x = f.element(13, 0);
        assert_eq!(x.encode(), "13+0*t");
        assert_eq!(f.parse_element("13+0*t").unwrap(), x);
        assert_eq!(f.parse_element("13").unwrap(), x);
        assert_eq!(f.parse_element("30").unwrap(), f.element(13, 0));
        assert!(f.parse_element("t+3").is_err());
        assert!(f.parse_element("1+2t").is_err());
    }

    #[test]
    fn enumeration_order_is_fp_first() {
        let f = FieldCtx::new(7).unwrap();
        let first: Vec<_> = f.enumerate().take(9).collect();
        assert_eq!(first[0], f.zero());
        assert_eq!(first[6], f.scalar(6));
        assert_eq!(first[7], f.t());
        assert_eq!(first[8], f.add(f.t(), f.one()));
        assert_eq!(f.enumerate().count() as u64, f.q());
    }
}
