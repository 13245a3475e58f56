//! Dense univariate polynomial algebra over any [`Field`] context: arithmetic,
//! gcd, resultants, Cantor-Zassenhaus factorization, root finding, Newton
//! interpolation, and splitting-field construction.
//!
//! Polynomials are immutable values holding their field context; the leading
//! coefficient is nonzero unless the polynomial is zero. Mixing contexts is a
//! programming error and panics; data-dependent failures (division by zero,
//! gcd(0,0), ...) surface as [`Error`].

use num_bigint::BigUint;
use num_integer::Integer;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::fieldcore::{ExtFieldCtx, Field, FieldCtx};
use crate::par::rng_for;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly<F: Field> {
    field: F,
    /// Coefficients by ascending degree, trailing zeros trimmed.
    coeffs: Vec<F::Elem>,
}

fn trim<F: Field>(field: &F, coeffs: &mut Vec<F::Elem>) {
    while coeffs.last().is_some_and(|c| field.is_zero(c)) {
        coeffs.pop();
    }
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        trim(&field, &mut coeffs);
        UniPoly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: F) -> Self {
        let c = field.one();
        UniPoly {
            field,
            coeffs: vec![c],
        }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial c * x^k.
    pub fn monomial(field: F, k: usize, c: F::Elem) -> Self {
        if field.is_zero(&c) {
            return Self::zero(field);
        }
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        UniPoly { field, coeffs }
    }

    pub fn x(field: F) -> Self {
        let (z, o) = (field.zero(), field.one());
        UniPoly {
            field,
            coeffs: vec![z, o],
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    fn check_ctx(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "mixed field contexts rejected: operands live in different fields"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ctx(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.add(&self.coeff(i), &other.coeff(i)));
        }
        Self::new(f.clone(), out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_ctx(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.sub(&self.coeff(i), &other.coeff(i)));
        }
        Self::new(f.clone(), out)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        UniPoly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ctx(other);
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f.clone());
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f.clone(), out)
    }

    pub fn scalar_mul(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f.clone());
        }
        UniPoly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// Formal derivative; in characteristic p the terms with p | i vanish.
    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(f.mul(&f.scalar(i as u64), c));
        }
        Self::new(f.clone(), out)
    }

    /// Euclidean division: (q, r) with self = q * other + r, deg r < deg other.
    pub fn divrem(&self, other: &Self) -> Result<(Self, Self), Error> {
        self.check_ctx(other);
        let f = &self.field;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.len() < other.coeffs.len() {
            return Ok((Self::zero(f.clone()), self.clone()));
        }
        let lc_inv = f.inv(other.leading_coeff().expect("nonzero divisor"))?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len() - other.coeffs.len() + 1];
        let dg = other.coeffs.len() - 1;
        while rem.len() > dg {
            let c = f.mul(rem.last().expect("trimmed"), &lc_inv);
            let shift = rem.len() - 1 - dg;
            if !f.is_zero(&c) {
                for (j, b) in other.coeffs.iter().enumerate().take(dg) {
                    rem[shift + j] = f.sub(&rem[shift + j], &f.mul(&c, b));
                }
            }
            quot[shift] = c;
            rem.pop();
            trim(f, &mut rem);
            if rem.len() <= dg {
                break;
            }
        }
        trim(f, &mut rem);
        Ok((Self::new(f.clone(), quot), Self::new(f.clone(), rem)))
    }

    pub fn rem(&self, other: &Self) -> Result<Self, Error> {
        Ok(self.divrem(other)?.1)
    }

    /// Monic scalar multiple (errors on the zero polynomial).
    pub fn monic(&self) -> Result<Self, Error> {
        let lc = self.leading_coeff().ok_or(Error::ZeroInput("monic"))?;
        let inv = self.field.inv(lc)?;
        Ok(self.scalar_mul(&inv))
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self, Error> {
        self.check_ctx(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let f = &self.field;
        let mut a = self.coeffs.clone();
        let mut b = other.coeffs.clone();
        while !b.is_empty() {
            rem_in_place(f, &mut a, &b)?;
            std::mem::swap(&mut a, &mut b);
        }
        UniPoly::new(f.clone(), a).monic()
    }

    /// True iff gcd(f, f') is constant.
    pub fn is_squarefree(&self) -> Result<bool, Error> {
        if self.is_zero() {
            return Err(Error::ZeroInput("is_squarefree"));
        }
        if self.degree() == Some(0) {
            return Ok(true);
        }
        let d = self.derivative();
        if d.is_zero() {
            // a p-th power of something nonconstant
            return Ok(false);
        }
        Ok(self.gcd(&d)?.degree() == Some(0))
    }

    /// Plain power by binary exponentiation with full products.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// self^e mod modulus by repeated squaring.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Self) -> Result<Self, Error> {
        self.check_ctx(modulus);
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let mut acc = Self::one(f.clone()).rem(modulus)?;
        let base = self.rem(modulus)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus)?;
            if e.bit(i) {
                acc = acc.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Res(f, g) = lc(f)^{deg g} * prod g(alpha_i) over the roots of f,
    /// computed through the polynomial remainder sequence:
    /// Res(f, g) = (-1)^{deg f * deg g} * lc(g)^{deg f - deg r} * Res(g, r)
    /// with r = f mod g.
    pub fn resultant(&self, other: &Self) -> Result<F::Elem, Error> {
        self.check_ctx(other);
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroInput("resultant"));
        }
        let fld = &self.field;
        let mut acc = fld.one();
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            let da = a.degree().expect("nonzero");
            let db = b.degree().expect("nonzero");
            if db == 0 {
                return Ok(fld.mul(&acc, &fld.pow(b.leading_coeff().expect("const"), da as u64)));
            }
            if da == 0 {
                return Ok(fld.mul(&acc, &fld.pow(a.leading_coeff().expect("const"), db as u64)));
            }
            if da < db {
                if da * db % 2 == 1 {
                    acc = fld.neg(&acc);
                }
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = a.rem(&b)?;
            if r.is_zero() {
                return Ok(fld.zero());
            }
            let dr = r.degree().expect("nonzero");
            if da * db % 2 == 1 {
                acc = fld.neg(&acc);
            }
            acc = fld.mul(
                &acc,
                &fld.pow(b.leading_coeff().expect("nonzero"), (da - dr) as u64),
            );
            a = b;
            b = r;
        }
    }

    /// All roots lying in this polynomial's field, with multiplicities, sorted.
    ///
    /// Distinct roots come from gcd(f, x^q - x) with x^q computed by repeated
    /// squaring mod f, split into linear factors by randomized gcd probes;
    /// multiplicities by repeated division.
    pub fn roots_in_field(&self, seed: u64) -> Result<Vec<(F::Elem, usize)>, Error> {
        if self.is_zero() {
            return Err(Error::ZeroInput("roots_in_field"));
        }
        let fld = &self.field;
        if self.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let mut rng = rng_for(seed, &[0x726f6f74, self.coeffs.len() as u64]);
        let monic = self.monic()?;
        let q = fld.order();
        let xq = UniPoly::x(fld.clone()).pow_mod(&q, &monic)?;
        let linear_part = monic.gcd(&xq.sub(&UniPoly::x(fld.clone())))?;
        let mut roots = Vec::new();
        if linear_part.degree() != Some(0) {
            split_into_linears(&linear_part, &q, &mut rng, &mut roots)?;
        }
        roots.sort();
        let mut out = Vec::with_capacity(roots.len());
        for r in roots {
            let lin = UniPoly::new(fld.clone(), vec![fld.neg(&r), fld.one()]);
            let mut mult = 0usize;
            let mut rest = self.clone();
            loop {
                let (quot, rem) = rest.divrem(&lin)?;
                if !rem.is_zero() {
                    break;
                }
                mult += 1;
                rest = quot;
            }
            debug_assert!(mult >= 1);
            out.push((r, mult));
        }
        Ok(out)
    }

    /// Full factorization into monic irreducibles with multiplicities
    /// (squarefree decomposition, then distinct-degree, then randomized
    /// equal-degree splitting). The product of the factors times the leading
    /// coefficient reproduces the input.
    pub fn factor(&self, seed: u64) -> Result<Vec<(Self, usize)>, Error> {
        if self.is_zero() {
            return Err(Error::ZeroInput("factor"));
        }
        let mut rng = rng_for(seed, &[0x666163, self.coeffs.len() as u64]);
        let mut out: Vec<(Self, usize)> = Vec::new();
        for (part, mult) in squarefree_decomposition(&self.monic()?)? {
            for (irr, inner) in distinct_degree_split(&part, &mut rng)? {
                out.push((irr, inner * mult));
            }
        }
        // a factor can be emitted twice when its multiplicity exceeds p; merge
        let mut merged: Vec<(Self, usize)> = Vec::new();
        'outer: for (fac, mult) in out {
            for (g, m) in merged.iter_mut() {
                if *g == fac {
                    *m += mult;
                    continue 'outer;
                }
            }
            merged.push((fac, mult));
        }
        merged.sort_by(|a, b| {
            (a.0.coeffs.len(), &a.0.coeffs, a.1).cmp(&(b.0.coeffs.len(), &b.0.coeffs, b.1))
        });
        Ok(merged)
    }

    /// Irreducibility over the polynomial's own field: x^{q^m} = x mod f and
    /// gcd(x^{q^i} - x, f) = 1 for every 0 < i < m.
    pub fn is_irreducible(&self) -> Result<bool, Error> {
        let m = match self.degree() {
            None | Some(0) => return Ok(false),
            Some(1) => return Ok(true),
            Some(m) => m,
        };
        let fld = &self.field;
        let monic = self.monic()?;
        let q = fld.order();
        let x = UniPoly::x(fld.clone());
        let mut cur = x.pow_mod(&q, &monic)?;
        for _ in 1..m {
            if monic.gcd(&cur.sub(&x))?.degree() != Some(0) {
                return Ok(false);
            }
            cur = cur.pow_mod(&q, &monic)?;
        }
        Ok(cur == x)
    }
}

/// In-place a := a mod b (b nonempty, trimmed).
fn rem_in_place<F: Field>(f: &F, a: &mut Vec<F::Elem>, b: &[F::Elem]) -> Result<(), Error> {
    let db = b.len() - 1;
    if a.len() <= db {
        return Ok(());
    }
    let lc_inv = f.inv(b.last().expect("nonzero divisor"))?;
    while a.len() > db {
        let c = f.mul(a.last().expect("trimmed"), &lc_inv);
        let shift = a.len() - 1 - db;
        if !f.is_zero(&c) {
            for (j, bc) in b.iter().enumerate().take(db) {
                a[shift + j] = f.sub(&a[shift + j], &f.mul(&c, bc));
            }
        }
        a.pop();
        trim(f, a);
    }
    Ok(())
}

/// Extended Euclid: returns (r, s, t) with s*f + t*g = r and r a greatest
/// common divisor (not normalized).
pub fn ext_gcd<F: Field>(
    f: &UniPoly<F>,
    g: &UniPoly<F>,
) -> Result<(UniPoly<F>, UniPoly<F>, UniPoly<F>), Error> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let fld = f.field().clone();
    let mut r0 = f.clone();
    let mut r1 = g.clone();
    let mut s0 = UniPoly::one(fld.clone());
    let mut s1 = UniPoly::zero(fld.clone());
    let mut t0 = UniPoly::zero(fld.clone());
    let mut t1 = UniPoly::one(fld);
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        (r0, r1) = (r1, r);
        (s0, s1) = (s1.clone(), s0.sub(&q.mul(&s1)));
        (t0, t1) = (t1.clone(), t0.sub(&q.mul(&t1)));
    }
    Ok((r0, s0, t0))
}

/// Split a monic product of distinct linear factors into its roots with
/// randomized gcd probes: gcd(g, s^((q-1)/2) - 1) for random s.
fn split_into_linears<F: Field>(
    g: &UniPoly<F>,
    q: &BigUint,
    rng: &mut ChaCha8Rng,
    roots: &mut Vec<F::Elem>,
) -> Result<(), Error> {
    let fld = g.field().clone();
    let exponent = (q - 1u32) >> 1;
    let mut stack = vec![g.clone()];
    while let Some(h) = stack.pop() {
        let d = h.degree().expect("nonzero bundle");
        if d == 0 {
            continue;
        }
        if d == 1 {
            let lc_inv = fld.inv(&h.coeff(1))?;
            roots.push(fld.neg(&fld.mul(&h.coeff(0), &lc_inv)));
            continue;
        }
        let mut split = None;
        for _ in 0..64 {
            let coeffs: Vec<F::Elem> = (0..d).map(|_| fld.sample(rng)).collect();
            let probe = UniPoly::new(fld.clone(), coeffs);
            if probe.is_zero() {
                continue;
            }
            let w = probe.pow_mod(&exponent, &h)?;
            let g1 = h.gcd(&w.sub(&UniPoly::one(fld.clone())))?;
            let dg1 = g1.degree().expect("gcd nonzero");
            if dg1 > 0 && dg1 < d {
                let g2 = h.divrem(&g1)?.0;
                split = Some((g1, g2));
                break;
            }
        }
        let (g1, g2) = split.ok_or(Error::RetriesExhausted("equal-degree splitting"))?;
        stack.push(g1);
        stack.push(g2);
    }
    Ok(())
}

/// Squarefree decomposition in characteristic p; handles the f' = 0 branch by
/// extracting p-th roots.
fn squarefree_decomposition<F: Field>(f: &UniPoly<F>) -> Result<Vec<(UniPoly<F>, usize)>, Error> {
    let fld = f.field().clone();
    let p = fld.characteristic();
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return Ok(out);
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        let root = pth_root(f)?;
        for (g, m) in squarefree_decomposition(&root)? {
            out.push((g, m * p as usize));
        }
        return Ok(out);
    }
    let mut c = f.gcd(&deriv)?;
    let mut w = f.divrem(&c)?.0;
    let mut i = 1usize;
    while w.degree() != Some(0) {
        let y = w.gcd(&c)?;
        let fac = w.divrem(&y)?.0;
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        w = y;
        c = c.divrem(&w)?.0;
        i += 1;
    }
    if c.degree() != Some(0) {
        let root = pth_root(&c)?;
        for (g, m) in squarefree_decomposition(&root)? {
            out.push((g, m * p as usize));
        }
    }
    Ok(out)
}

/// p-th root of a polynomial whose derivative vanishes: every exponent is a
/// multiple of p and c^(1/p) = c^(q/p) in GF(q).
fn pth_root<F: Field>(f: &UniPoly<F>) -> Result<UniPoly<F>, Error> {
    let fld = f.field().clone();
    let p = fld.characteristic() as usize;
    let e = fld.order() / fld.characteristic();
    let deg = f.degree().expect("nonzero");
    debug_assert_eq!(deg % p, 0);
    debug_assert!(
        (0..=deg).all(|i| i % p == 0 || fld.is_zero(&f.coeff(i))),
        "pth_root input has a coefficient at an exponent not divisible by p"
    );
    let mut out = Vec::with_capacity(deg / p + 1);
    for i in 0..=deg / p {
        out.push(fld.pow_big(&f.coeff(i * p), &e));
    }
    Ok(UniPoly::new(fld, out))
}

/// Distinct-degree then equal-degree factorization of a monic squarefree
/// polynomial; returns monic irreducibles with multiplicity 1.
fn distinct_degree_split<F: Field>(
    f: &UniPoly<F>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(UniPoly<F>, usize)>, Error> {
    let fld = f.field().clone();
    let q = fld.order();
    let x = UniPoly::x(fld.clone());
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut frob = x.pow_mod(&q, &rest)?;
    let mut d = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * d {
        let bundle = rest.gcd(&frob.sub(&x))?;
        if bundle.degree().unwrap_or(0) > 0 {
            equal_degree_split(&bundle, d, &q, rng, &mut out)?;
            rest = rest.divrem(&bundle)?.0;
            if rest.degree() == Some(0) {
                break;
            }
            frob = frob.rem(&rest)?;
        }
        frob = frob.pow_mod(&q, &rest)?;
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push((rest, 1));
    }
    Ok(out)
}

/// Cantor-Zassenhaus equal-degree splitting of a product of irreducibles all
/// of degree d.
fn equal_degree_split<F: Field>(
    bundle: &UniPoly<F>,
    d: usize,
    q: &BigUint,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<(UniPoly<F>, usize)>,
) -> Result<(), Error> {
    let fld = bundle.field().clone();
    let exponent = (q.pow(d as u32) - 1u32) >> 1;
    let mut stack = vec![bundle.clone()];
    while let Some(h) = stack.pop() {
        let dh = h.degree().expect("nonzero bundle");
        if dh == d {
            out.push((h, 1));
            continue;
        }
        let mut split = None;
        for _ in 0..64 {
            let coeffs: Vec<F::Elem> = (0..dh).map(|_| fld.sample(rng)).collect();
            let probe = UniPoly::new(fld.clone(), coeffs);
            if probe.is_zero() {
                continue;
            }
            let w = probe.pow_mod(&exponent, &h)?;
            let g1 = h.gcd(&w.sub(&UniPoly::one(fld.clone())))?;
            let dg1 = g1.degree().expect("gcd nonzero");
            if dg1 > 0 && dg1 < dh {
                let g2 = h.divrem(&g1)?.0;
                split = Some((g1, g2));
                break;
            }
        }
        let (g1, g2) = split.ok_or(Error::RetriesExhausted("equal-degree splitting"))?;
        stack.push(g1);
        stack.push(g2);
    }
    Ok(())
}

/// Streaming Newton interpolation: push points one at a time, read the
/// polynomial off at the end. Duplicate nodes are rejected.
pub struct NewtonInterpolator<F: Field> {
    field: F,
    nodes: Vec<F::Elem>,
    /// Divided-difference coefficients c_k of the Newton form.
    coeffs: Vec<F::Elem>,
}

impl<F: Field> NewtonInterpolator<F> {
    pub fn new(field: F) -> Self {
        NewtonInterpolator {
            field,
            nodes: Vec::new(),
            coeffs: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn push(&mut self, x: F::Elem, y: F::Elem) -> Result<(), Error> {
        let f = &self.field;
        // newton eval at x and the product of (x - x_j)
        let mut val = f.zero();
        let mut prod = f.one();
        for (c, node) in self.coeffs.iter().zip(&self.nodes) {
            val = f.add(&val, &f.mul(c, &prod));
            let diff = f.sub(&x, node);
            if f.is_zero(&diff) {
                return Err(Error::DuplicateNode);
            }
            prod = f.mul(&prod, &diff);
        }
        let c = f.mul(&f.sub(&y, &val), &f.inv(&prod)?);
        self.nodes.push(x);
        self.coeffs.push(c);
        Ok(())
    }

    /// Expand the Newton form into the monomial basis.
    pub fn poly(&self) -> Result<UniPoly<F>, Error> {
        if self.nodes.is_empty() {
            return Err(Error::EmptyInterpolation);
        }
        let f = self.field.clone();
        let n = self.nodes.len();
        let mut acc = UniPoly::constant(f.clone(), self.coeffs[n - 1].clone());
        for k in (0..n - 1).rev() {
            let lin = UniPoly::new(
                f.clone(),
                vec![f.neg(&self.nodes[k]), f.one()],
            );
            acc = acc.mul(&lin).add(&UniPoly::constant(f.clone(), self.coeffs[k].clone()));
        }
        Ok(acc)
    }
}

/// Unique polynomial of degree < points.len() through all points.
pub fn interpolate<F: Field>(
    field: &F,
    points: &[(F::Elem, F::Elem)],
) -> Result<UniPoly<F>, Error> {
    let mut it = NewtonInterpolator::new(field.clone());
    for (x, y) in points {
        it.push(x.clone(), y.clone())?;
    }
    it.poly()
}

/// A squarefree polynomial over GF(p^2) together with its splitting field
/// GF(p^(2m)) and all of its roots there.
pub struct SplittingField {
    pub ext: ExtFieldCtx,
    pub roots: Vec<crate::fieldcore::ExtElement>,
}

impl SplittingField {
    pub fn degree(&self) -> usize {
        self.ext.m()
    }
}

/// Factor f over GF(p^2), build the splitting field of degree
/// m = lcm of the irreducible factor degrees, embed f and return all roots.
pub fn splitting_roots(f: &UniPoly<FieldCtx>, seed: u64) -> Result<SplittingField, Error> {
    if !f.is_squarefree()? {
        return Err(Error::NotSquarefree);
    }
    let base = *f.field();
    let factors = f.factor(seed)?;
    let mut m = 1usize;
    for (fac, _) in &factors {
        m = m.lcm(&fac.degree().expect("nonconstant factor"));
    }
    let ext = ExtFieldCtx::new(base, m, seed)?;
    let lifted = UniPoly::new(ext.clone(), f.coeffs().iter().map(|c| ext.embed(*c)).collect());
    let roots_mult = lifted.roots_in_field(seed)?;
    let n_roots: usize = roots_mult.iter().map(|(_, m)| m).sum();
    debug_assert_eq!(
        n_roots,
        f.degree().expect("nonzero"),
        "splitting field too small: lcm/irreducibility bug"
    );
    let roots: Vec<_> = roots_mult.into_iter().map(|(r, _)| r).collect();
    for r in &roots {
        debug_assert!(ext.is_zero(&lifted.eval(r)));
    }
    Ok(SplittingField { ext, roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldcore::Fp2Element;
    use proptest::prelude::*;

    fn f17() -> FieldCtx {
        FieldCtx::new(17).unwrap()
    }

    fn f7() -> FieldCtx {
        FieldCtx::new(7).unwrap()
    }

    /// y^2 = x^10 + x^7 + a x^4 + b x right-hand side.
    fn fab(f: FieldCtx, a: Fp2Element, b: Fp2Element) -> UniPoly<FieldCtx> {
        let mut c = vec![f.zero(); 11];
        c[10] = f.one();
        c[7] = f.one();
        c[4] = a;
        c[1] = b;
        UniPoly::new(f, c)
    }

    #[test]
    fn derivative_kills_pth_powers() {
        let f = f7();
        // x^7 + x over GF(49): derivative is 7x^6 + 1 = 1
        let mut c = vec![f.zero(); 8];
        c[7] = f.one();
        c[1] = f.one();
        let poly = UniPoly::new(f, c);
        assert_eq!(poly.derivative(), UniPoly::one(f));
    }

    #[test]
    fn divrem_exact() {
        let f = f17();
        // (x^2 - 1) / (x - 1) = (x + 1, 0)
        let num = UniPoly::new(f, vec![f.neg(f.one()), f.zero(), f.one()]);
        let den = UniPoly::new(f, vec![f.neg(f.one()), f.one()]);
        let (q, r) = num.divrem(&den).unwrap();
        assert_eq!(q, UniPoly::new(f, vec![f.one(), f.one()]));
        assert!(r.is_zero());
        assert!(matches!(
            num.divrem(&UniPoly::zero(f)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn eval_at_zero_of_family_poly() {
        let f = f17();
        let poly = fab(f, f.scalar(13), f.scalar(12));
        assert!(poly.eval(&f.zero()).is_zero());
    }

    #[test]
    fn gcd_of_table_curve_is_constant() {
        let f = f17();
        let poly = fab(f, f.scalar(13), f.scalar(12));
        let g = poly.gcd(&poly.derivative()).unwrap();
        assert_eq!(g.degree(), Some(0));
        assert!(poly.is_squarefree().unwrap());
    }

    #[test]
    fn gcd_with_shared_square() {
        let f = f17();
        // gcd(x^2 (x-1), x^2) = x^2
        let x2 = UniPoly::monomial(f, 2, f.one());
        let x2_shift = x2.mul(&UniPoly::new(f, vec![f.neg(f.one()), f.one()]));
        assert_eq!(x2_shift.gcd(&x2).unwrap(), x2);
        assert!(matches!(
            UniPoly::zero(f).gcd(&UniPoly::zero(f)),
            Err(Error::GcdOfZeros)
        ));
    }

    #[test]
    fn b_zero_is_never_squarefree() {
        let f = f17();
        for a0 in 0..17 {
            let poly = fab(f, f.scalar(a0), f.zero());
            assert!(!poly.is_squarefree().unwrap());
            assert!(poly.gcd(&poly.derivative()).unwrap().degree().unwrap() >= 1);
        }
    }

    #[test]
    fn resultant_of_linears() {
        let f = f17();
        // Res(x - u, x - v) = u - v
        let u = f.element(5, 3);
        let v = f.element(9, 11);
        let fu = UniPoly::new(f, vec![f.neg(u), f.one()]);
        let fv = UniPoly::new(f, vec![f.neg(v), f.one()]);
        assert_eq!(fu.resultant(&fv).unwrap(), f.sub(u, v));
        assert!(matches!(
            fu.resultant(&UniPoly::zero(f)),
            Err(Error::ZeroInput(_))
        ));
    }

    /// Sylvester-matrix determinant over the field, the independent oracle for
    /// the PRS resultant.
    pub(crate) fn sylvester_resultant(f: &UniPoly<FieldCtx>, g: &UniPoly<FieldCtx>) -> Fp2Element {
        let fld = *f.field();
        let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
        let n = df + dg;
        if n == 0 {
            return fld.one();
        }
        let mut m = vec![vec![fld.zero(); n]; n];
        for row in 0..dg {
            for (k, c) in f.coeffs().iter().enumerate() {
                m[row][row + df - k] = *c;
            }
        }
        for row in 0..df {
            for (k, c) in g.coeffs().iter().enumerate() {
                m[dg + row][row + dg - k] = *c;
            }
        }
        // Gaussian elimination with column pivoting, tracking the sign
        let mut det = fld.one();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero());
            let piv = match piv {
                Some(p) => p,
                None => return fld.zero(),
            };
            if piv != col {
                m.swap(piv, col);
                det = fld.neg(det);
            }
            det = fld.mul(det, m[col][col]);
            let inv = fld.inv(m[col][col]).unwrap();
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = fld.mul(m[r][col], inv);
                for c in col..n {
                    let s = fld.mul(factor, m[col][c]);
                    m[r][c] = fld.sub(m[r][c], s);
                }
            }
        }
        det
    }

    #[test]
    fn resultant_matches_sylvester_oracle() {
        let f = f17();
        let mut rng = rng_for(3, &[1]);
        for _ in 0..120 {
            let fc: Vec<_> = (0..4).map(|_| Field::sample(&f, &mut rng)).collect();
            let gc: Vec<_> = (0..4).map(|_| Field::sample(&f, &mut rng)).collect();
            let fp = UniPoly::new(f, fc);
            let gp = UniPoly::new(f, gc);
            if fp.is_zero() || gp.is_zero() {
                continue;
            }
            assert_eq!(fp.resultant(&gp).unwrap(), sylvester_resultant(&fp, &gp));
        }
    }

    #[test]
    fn resultant_detects_planted_common_root() {
        let f = f17();
        let mut rng = rng_for(4, &[2]);
        for _ in 0..60 {
            let shared = Field::sample(&f, &mut rng);
            let lin = UniPoly::new(f, vec![f.neg(shared), f.one()]);
            let a = lin.mul(&UniPoly::new(
                f,
                (0..3).map(|_| Field::sample(&f, &mut rng)).collect(),
            ));
            let b = lin.mul(&UniPoly::new(
                f,
                (0..3).map(|_| Field::sample(&f, &mut rng)).collect(),
            ));
            if a.is_zero() || b.is_zero() {
                continue;
            }
            assert!(a.resultant(&b).unwrap().is_zero());
            assert!(a.gcd(&b).unwrap().degree().unwrap() >= 1);
        }
    }

    #[test]
    fn roots_of_x_squared_minus_delta() {
        let f = f17();
        let poly = UniPoly::new(f, vec![f.neg(f.scalar(f.delta())), f.zero(), f.one()]);
        let roots = poly.roots_in_field(0).unwrap();
        assert_eq!(roots, vec![(f.t(), 1), (f.neg(f.t()), 1)]);
    }

    #[test]
    fn roots_of_xq_minus_x_is_everything() {
        let f = f7();
        // q = 49
        let mut c = vec![f.zero(); 50];
        c[49] = f.one();
        c[1] = f.neg(f.one());
        let poly = UniPoly::new(f, c);
        let roots = poly.roots_in_field(1).unwrap();
        assert_eq!(roots.len(), 49);
        assert!(roots.iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn roots_match_exhaustive_scan() {
        let f = f17();
        let poly = fab(f, f.scalar(13), f.scalar(12));
        let roots = poly.roots_in_field(2).unwrap();
        let scan: Vec<_> = f.enumerate().filter(|x| poly.eval(x).is_zero()).collect();
        assert_eq!(roots.len(), scan.len());
        for (r, m) in &roots {
            assert_eq!(*m, 1);
            assert!(scan.contains(r));
        }
    }

    #[test]
    fn factor_x_squared_minus_delta_is_irreducible() {
        let f = f17();
        let poly = UniPoly::new(f, vec![f.neg(f.scalar(f.delta())), f.zero(), f.one()]);
        // delta is a nonresidue of F_p but always a square in GF(p^2), so factor
        // over F_p is what the classical statement is about; over GF(p^2) the
        // polynomial splits. Verify the GF(p^2) behaviour and the irreducibility
        // test on a genuinely irreducible quadratic instead.
        let factors = poly.factor(3).unwrap();
        assert_eq!(factors.len(), 2);
        let ext = ExtFieldCtx::new(f, 2, 0).unwrap();
        let modulus = UniPoly::new(f, ext.modulus().to_vec());
        assert!(modulus.is_irreducible().unwrap());
        assert_eq!(modulus.factor(4).unwrap().len(), 1);
    }

    #[test]
    fn factor_xq_minus_x_into_all_linears() {
        let f = f7();
        let mut c = vec![f.zero(); 50];
        c[49] = f.one();
        c[1] = f.neg(f.one());
        let poly = UniPoly::new(f, c);
        let factors = poly.factor(5).unwrap();
        assert_eq!(factors.len(), 49);
        assert!(factors.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
    }

    #[test]
    fn factor_round_trip_table_curve() {
        let f = f17();
        let poly = fab(f, f.scalar(13), f.scalar(12));
        let factors = poly.factor(6).unwrap();
        let mut prod = UniPoly::constant(f, *poly.leading_coeff().unwrap());
        for (g, m) in &factors {
            assert!(g.is_irreducible().unwrap());
            for _ in 0..*m {
                prod = prod.mul(g);
            }
        }
        assert_eq!(prod, poly);
    }

    #[test]
    fn splitting_roots_of_table_curve() {
        let f = f17();
        let poly = fab(f, f.scalar(13), f.scalar(12));
        let split = splitting_roots(&poly, 7).unwrap();
        assert_eq!(split.roots.len(), 10);
        let lifted = UniPoly::new(
            split.ext.clone(),
            poly.coeffs().iter().map(|c| split.ext.embed(*c)).collect(),
        );
        for r in &split.roots {
            assert!(split.ext.is_zero(&lifted.eval(r)));
        }
        let mut sorted = split.roots.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), 10, "roots are pairwise distinct");
    }

    #[test]
    fn splitting_roots_planted_quadratic_times_cubic() {
        let f = f7();
        // plant an irreducible quadratic and an irreducible cubic; m = lcm(2,3)
        let mut rng = rng_for(11, &[3]);
        let quad = loop {
            let c: Vec<_> = (0..2).map(|_| Field::sample(&f, &mut rng)).collect();
            let cand = UniPoly::new(f, [c, vec![f.one()]].concat());
            if cand.is_irreducible().unwrap() {
                break cand;
            }
        };
        let cubic = loop {
            let c: Vec<_> = (0..3).map(|_| Field::sample(&f, &mut rng)).collect();
            let cand = UniPoly::new(f, [c, vec![f.one()]].concat());
            if cand.is_irreducible().unwrap() {
                break cand;
            }
        };
        let prod = quad.mul(&cubic);
        if !prod.is_squarefree().unwrap() {
            return; // quad == cubic impossible (degrees differ); defensive
        }
        let split = splitting_roots(&prod, 8).unwrap();
        assert_eq!(split.degree(), 6);
        assert_eq!(split.roots.len(), 5);
        let lifted = UniPoly::new(
            split.ext.clone(),
            prod.coeffs().iter().map(|c| split.ext.embed(*c)).collect(),
        );
        for r in &split.roots {
            assert!(split.ext.is_zero(&lifted.eval(r)));
        }
    }

    #[test]
    fn splitting_roots_rejects_non_squarefree() {
        let f = f17();
        let x2 = UniPoly::monomial(f, 2, f.one());
        assert!(matches!(splitting_roots(&x2, 0), Err(Error::NotSquarefree)));
    }

    #[test]
    fn interpolate_constant_and_round_trip() {
        let f = f17();
        let c = f.element(5, 9);
        let poly = interpolate(&f, &[(f.zero(), c)]).unwrap();
        assert_eq!(poly, UniPoly::constant(f, c));
        assert!(matches!(
            interpolate(&f, &[(f.zero(), c), (f.zero(), c)]),
            Err(Error::DuplicateNode)
        ));
    }

    #[test]
    fn interpolation_recovers_random_polys() {
        let f = f17();
        let mut rng = rng_for(12, &[4]);
        for deg in [0usize, 1, 3, 7, 20] {
            let coeffs: Vec<_> = (0..=deg).map(|_| Field::sample(&f, &mut rng)).collect();
            let poly = UniPoly::new(f, coeffs);
            let pts: Vec<_> = f
                .enumerate()
                .take(deg + 1)
                .map(|x| {
                    let y = poly.eval(&x);
                    (x, y)
                })
                .collect();
            let back = interpolate(&f, &pts).unwrap();
            assert_eq!(back, poly);
            // held-out point
            let probe = f.element(destin(deg as u64), 3);
            assert_eq!(back.eval(&probe), poly.eval(&probe));
        }
    }

    fn destin(x: u64) -> u64 {
        x.wrapping_mul(11).wrapping_add(5)
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

        #[test]
        fn divrem_reconstructs(fa in proptest::collection::vec(0u64..289, 0..9),
                               ga in proptest::collection::vec(0u64..289, 1..9)) {
            let f = f17();
            let fp = UniPoly::new(f, fa.iter().map(|&n| f.element(n % 17, n / 17)).collect());
            let gp = UniPoly::new(f, ga.iter().map(|&n| f.element(n % 17, n / 17)).collect());
            prop_assume!(!gp.is_zero());
            let (q, r) = fp.divrem(&gp).unwrap();
            prop_assert_eq!(q.mul(&gp).add(&r), fp);
            if !r.is_zero() {
                prop_assert!(r.degree().unwrap() < gp.degree().unwrap());
            }
        }

        #[test]
        fn gcd_divides_both_and_is_monic(fa in proptest::collection::vec(0u64..289, 1..8),
                                         ga in proptest::collection::vec(0u64..289, 1..8)) {
            let f = f17();
            let fp = UniPoly::new(f, fa.iter().map(|&n| f.element(n % 17, n / 17)).collect());
            let gp = UniPoly::new(f, ga.iter().map(|&n| f.element(n % 17, n / 17)).collect());
            prop_assume!(!fp.is_zero() || !gp.is_zero());
            let g = fp.gcd(&gp).unwrap();
            prop_assert_eq!(g.leading_coeff(), Some(&f.one()));
            if !fp.is_zero() {
                prop_assert!(fp.rem(&g).unwrap().is_zero());
            }
            if !gp.is_zero() {
                prop_assert!(gp.rem(&g).unwrap().is_zero());
            }
        }

        #[test]
        fn resultant_zero_iff_common_factor(fa in proptest::collection::vec(0u64..289, 2..7),
                                            ga in proptest::collection::vec(0u64..289, 2..7)) {
            let f = f17();
            let fp = UniPoly::new(f, fa.iter().map(|&n| f.element(n % 17, n / 17)).collect());
            let gp = UniPoly::new(f, ga.iter().map(|&n| f.element(n % 17, n / 17)).collect());
            prop_assume!(!fp.is_zero() && !gp.is_zero());
            let res = fp.resultant(&gp).unwrap();
            let g = fp.gcd(&gp).unwrap();
            prop_assert_eq!(res.is_zero(), g.degree().unwrap() >= 1);
        }
    }
}
