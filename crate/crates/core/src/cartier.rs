//! Cartier-Manin matrices.
//!
//! Two routes are kept deliberately separate:
//!
//! * [`cm_matrix_generic`] is the direct Yui formula for a concrete curve
//!   y^2 = f(x): the (i, j) entry is the x^(ip-j) coefficient of f^((p-1)/2),
//!   computed by plain binary powering. It is slow and simple, and serves as
//!   the independent oracle for everything else. Powering avoids the
//!   coefficient recurrence on purpose: for arbitrary f the recurrence divides
//!   by k, which vanishes mod p at k = p, 2p, ....
//! * [`parametric_cm`] builds the 4x4 matrix of the family
//!   H_{a,b}: y^2 = x^10 + x^7 + a x^4 + b x with a, b kept as parameters,
//!   in O(p^3) via two linear recurrences on the coefficients of
//!   g^n, g = x^9 + x^6 + a x^3 + b, n = (p-1)/2. Writing f = x*g(x) and g as
//!   a polynomial in x^3, only the x^(3k) coefficients of g^n are nonzero and
//!   the (i, j) entry sits at k = ((2i-1)p - (2j-1))/2.
//!
//! The index map above uses the minus sign: it is the one consistent with
//! c_(ip-j) of f^n = x^n g^n, and the generic oracle validates it at
//! construction time in the tests.

use std::collections::BTreeSet;

use crate::bipoly::BiPoly;
use crate::error::Error;
use crate::fieldcore::{FieldCtx, Fp2Element};
use crate::unipoly::UniPoly;

/// Concrete g x g Cartier-Manin matrix of a hyperelliptic curve over GF(p^2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartierMatrix {
    p: u64,
    genus: usize,
    /// Row-major, (i, j) entry at (i-1)*genus + (j-1).
    entries: Vec<Fp2Element>,
}

impl CartierMatrix {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// 1-indexed access, matching the classical notation.
    pub fn entry(&self, i: usize, j: usize) -> Fp2Element {
        assert!((1..=self.genus).contains(&i) && (1..=self.genus).contains(&j));
        self.entries[(i - 1) * self.genus + (j - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|c| c.is_zero())
    }

    /// Rank over GF(p^2) by Gaussian elimination.
    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        let g = self.genus;
        let mut m: Vec<Vec<Fp2Element>> = (0..g)
            .map(|i| self.entries[i * g..(i + 1) * g].to_vec())
            .collect();
        let mut rank = 0;
        for col in 0..g {
            let piv = (rank..g).find(|&r| !m[r][col].is_zero());
            let Some(piv) = piv else { continue };
            m.swap(rank, piv);
            let inv = ctx.inv(m[rank][col]).expect("pivot nonzero");
            for r in rank + 1..g {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = ctx.mul(m[r][col], inv);
                for c in col..g {
                    let s = ctx.mul(factor, m[rank][c]);
                    m[r][c] = ctx.sub(m[r][c], s);
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Yui's formula for y^2 = f(x), f squarefree of degree 2g+1 or 2g+2:
/// entry (i, j) is the coefficient of x^(ip-j) in f^((p-1)/2).
pub fn cm_matrix_generic(f: &UniPoly<FieldCtx>, genus: usize) -> Result<CartierMatrix, Error> {
    let ctx = *f.field();
    let p = ctx.p();
    let deg = f.degree().unwrap_or(0);
    if deg != 2 * genus + 1 && deg != 2 * genus + 2 {
        return Err(Error::WrongDegree {
            low: 2 * genus + 1,
            high: 2 * genus + 2,
            got: deg,
        });
    }
    if !f.is_squarefree()? {
        return Err(Error::NotSquarefree);
    }
    let power = f.pow((p - 1) / 2);
    let mut entries = Vec::with_capacity(genus * genus);
    for i in 1..=genus as u64 {
        for j in 1..=genus as u64 {
            entries.push(power.coeff((i * p - j) as usize));
        }
    }
    Ok(CartierMatrix {
        p,
        genus,
        entries,
    })
}

/// Nygaard's criterion: the curve is superspecial iff the Cartier operator,
/// hence the whole matrix, vanishes.
pub fn is_superspecial(f: &UniPoly<FieldCtx>, genus: usize) -> Result<bool, Error> {
    Ok(cm_matrix_generic(f, genus)?.is_zero())
}

/// The positions (i, j), 1-indexed, where the parametric matrix of the family
/// may be nonzero. All other entries vanish because g^n is a polynomial in
/// x^3.
pub fn sparsity_pattern(p: u64) -> BTreeSet<(usize, usize)> {
    let set: &[(usize, usize)] = if p % 3 == 1 {
        &[(1, 1), (1, 4), (2, 2), (3, 3), (4, 1), (4, 4)]
    } else {
        &[(1, 3), (2, 2), (3, 1), (3, 4), (4, 3)]
    };
    set.iter().copied().collect()
}

/// 4x4 Cartier-Manin matrix of H_{a,b} with a, b symbolic: entries are
/// polynomials in (a, b) of total degree <= (p-1)/2.
#[derive(Clone)]
pub struct ParametricCm {
    p: u64,
    n: usize,
    entries: Vec<Option<BiPoly>>,
}

impl ParametricCm {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// n = (p-1)/2, the degree bound of every entry.
    pub fn half(&self) -> usize {
        self.n
    }

    /// 1-indexed entry; None means identically zero by the sparsity pattern.
    pub fn entry(&self, i: usize, j: usize) -> Option<&BiPoly> {
        assert!((1..=4).contains(&i) && (1..=4).contains(&j));
        self.entries[(i - 1) * 4 + (j - 1)].as_ref()
    }

    /// The stored nonzero entries in row-major order, dropping any that are
    /// identically zero.
    pub fn nonzero_entries(&self) -> Vec<((usize, usize), &BiPoly)> {
        let mut out = Vec::new();
        for i in 1..=4 {
            for j in 1..=4 {
                if let Some(e) = self.entry(i, j) {
                    if !e.is_zero() {
                        out.push(((i, j), e));
                    }
                }
            }
        }
        out
    }

    /// Specialize every entry at (a0, b0).
    pub fn eval(&self, a0: Fp2Element, b0: Fp2Element, ctx: &FieldCtx) -> CartierMatrix {
        let mut entries = Vec::with_capacity(16);
        for i in 1..=4 {
            for j in 1..=4 {
                entries.push(match self.entry(i, j) {
                    Some(e) => e.eval_ab(a0, b0),
                    None => ctx.zero(),
                });
            }
        }
        CartierMatrix {
            p: self.p,
            genus: 4,
            entries,
        }
    }
}

/// Index of the x^k coefficient of g^n holding entry (i, j):
/// k = ((2i-1)p - (2j-1))/2, from c_(ip-j) of f^n = x^n g^n. Returns None
/// when the entry is structurally zero (k not a multiple of 3).
pub(crate) fn entry_index(p: u64, i: u64, j: u64) -> Option<u64> {
    let num = (2 * i - 1) * p - (2 * j - 1);
    debug_assert_eq!(num % 2, 0);
    let k = num / 2;
    (k % 3 == 0).then_some(k)
}

/// One forward step: k b (g^n)_k = (3(n+1)-k) a (g^n)_{k-3}
/// + (6(n+1)-k) (g^n)_{k-6} + (9(n+1)-k) (g^n)_{k-9}, solved for (g^n)_k.
/// Valid for k = 3, 6, ..., 3p-3: such k are never divisible by p because
/// they are multiples of 3 below 3p and p > 3 is prime.
fn forward_step(
    ctx: &FieldCtx,
    n: i128,
    k: i128,
    w3: &BiPoly,
    w6: &BiPoly,
    w9: &BiPoly,
) -> Result<BiPoly, Error> {
    let p = ctx.p() as i128;
    assert!(k % p != 0, "forward scalar k vanished mod p");
    let t = w3
        .mul_by_a()?
        .scalar_mul_int(3 * (n + 1) - k)
        .add(&w6.scalar_mul_int(6 * (n + 1) - k))
        .add(&w9.scalar_mul_int(9 * (n + 1) - k));
    let t = t.exact_div_b()?;
    let k_inv = ctx.inv(ctx.scalar_i128(k))?;
    Ok(t.scalar_mul(k_inv))
}

/// One backward step: (9n-k) (g^n)_k = (k+9) b (g^n)_{k+9}
/// + (k+6-3n) a (g^n)_{k+6} + (k+3-6n) (g^n)_{k+3}, solved for (g^n)_k.
fn backward_step(
    ctx: &FieldCtx,
    n: i128,
    k: i128,
    u3: &BiPoly,
    u6: &BiPoly,
    u9: &BiPoly,
) -> Result<BiPoly, Error> {
    let p = ctx.p() as i128;
    let s = 9 * n - k;
    assert!(s % p != 0, "backward scalar 9n-k vanished mod p");
    let t = u3
        .scalar_mul_int(k + 3 - 6 * n)
        .add(&u6.mul_by_a()?.scalar_mul_int(k + 6 - 3 * n))
        .add(&u9.mul_by_b()?.scalar_mul_int(k + 9));
    let s_inv = ctx.inv(ctx.scalar_i128(s))?;
    Ok(t.scalar_mul(s_inv))
}

/// b^n as a bivariate polynomial with the given capacity.
fn b_power(ctx: &FieldCtx, n: usize, bound: usize) -> BiPoly {
    let mut out = BiPoly::zero(*ctx, bound);
    out.set(0, n, ctx.one());
    out
}

/// Build the parametric Cartier-Manin matrix of H_{a,b} for the prime of
/// the context.
///
/// Rows 1..3 come from the forward recurrence starting at (g^n)_0 = b^n and
/// running over the multiples of 3 up to 3p-3 (their largest index,
/// (5p-1)/2, lies below that). Row 4 comes from the backward recurrence
/// starting at (g^n)_{9n} = 1 and descending to (7p-7)/2, where the scalar
/// 9n-k stays within [1, p-1]. State is a sliding window of three
/// coefficients, so memory stays at O(p^2) field elements.
pub fn parametric_cm(ctx: &FieldCtx) -> Result<ParametricCm, Error> {
    let p = ctx.p();
    let n = ((p - 1) / 2) as usize;
    let work_bound = n + 1;
    let mut needed: Vec<(u64, usize, usize)> = Vec::new();
    for i in 1..=4u64 {
        for j in 1..=4u64 {
            if let Some(k) = entry_index(p, i, j) {
                needed.push((k, i as usize, j as usize));
            }
        }
    }
    debug_assert!(
        needed
            .iter()
            .map(|&(_, i, j)| (i, j))
            .collect::<BTreeSet<_>>()
            == sparsity_pattern(p),
        "index map disagrees with the sparsity lemma"
    );
    let mut entries: Vec<Option<BiPoly>> = vec![None; 16];
    let mut record = |k: u64, value: &BiPoly| -> Result<(), Error> {
        for &(kk, i, j) in &needed {
            if kk == k {
                // entries have total degree <= n; repacking asserts it
                entries[(i - 1) * 4 + (j - 1)] = Some(value.with_bound(n)?);
            }
        }
        Ok(())
    };

    let forward_max = 3 * p - 3;
    let mut w3 = b_power(ctx, n, work_bound);
    let mut w6 = BiPoly::zero(*ctx, work_bound);
    let mut w9 = BiPoly::zero(*ctx, work_bound);
    record(0, &w3)?;
    let mut k = 3u64;
    while k <= forward_max {
        let cur = forward_step(ctx, n as i128, k as i128, &w3, &w6, &w9)?;
        record(k, &cur)?;
        w9 = std::mem::replace(&mut w6, std::mem::replace(&mut w3, cur));
        k += 3;
    }

    let backward_min = needed
        .iter()
        .map(|&(k, _, _)| k)
        .filter(|&k| k > forward_max)
        .min();
    if let Some(backward_min) = backward_min {
        let top = 9 * n as u64;
        let mut u3 = BiPoly::constant(*ctx, work_bound, ctx.one());
        let mut u6 = BiPoly::zero(*ctx, work_bound);
        let mut u9 = BiPoly::zero(*ctx, work_bound);
        record(top, &u3)?;
        let mut k = top - 3;
        while k >= backward_min {
            let cur = backward_step(ctx, n as i128, k as i128, &u3, &u6, &u9)?;
            record(k, &cur)?;
            u9 = std::mem::replace(&mut u6, std::mem::replace(&mut u3, cur));
            if k < 3 {
                break;
            }
            k -= 3;
        }
    }

    Ok(ParametricCm { p, n, entries })
}

/// A cyclic cover of the projective line of type (n; n_1, ..., n_r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverType {
    n: u64,
    exponents: Vec<u64>,
}

impl CoverType {
    pub fn new(n: u64, exponents: Vec<u64>) -> Result<CoverType, Error> {
        if n < 2 || exponents.is_empty() {
            return Err(Error::InvalidCover("need n >= 2 and at least one branch"));
        }
        if exponents.iter().any(|&e| e == 0 || e >= n) {
            return Err(Error::InvalidCover("branch exponents must satisfy 1 <= n_i < n"));
        }
        if exponents.iter().sum::<u64>() % n != 0 {
            return Err(Error::InvalidCover("branch exponents must sum to 0 mod n"));
        }
        let g = exponents.iter().fold(n, |acc, &e| gcd(acc, e));
        if g != 1 {
            return Err(Error::InvalidCover("gcd(n, n_1, ..., n_r) must be 1"));
        }
        Ok(CoverType { n, exponents })
    }

    pub fn degree(&self) -> u64 {
        self.n
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Genus from the Hurwitz formula 2g - 2 + 2n = sum (n/v_i)(v_i - 1) with
    /// v_i = n / gcd(n, n_i).
    pub fn genus(&self) -> u64 {
        let n = self.n;
        let total: u64 = self
            .exponents
            .iter()
            .map(|&ni| {
                let v = n / gcd(n, ni);
                (n / v) * (v - 1)
            })
            .sum();
        debug_assert!(total + 2 >= 2 * n && (total + 2 - 2 * n) % 2 == 0);
        (total + 2 - 2 * n) / 2
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Eigenspace dimensions and Elkin's bounds on the rank of the Cartier
/// operator of a cyclic cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElkinBounds {
    /// d_0, ..., d_{n-1}: dimensions of the character eigenspaces.
    pub dims: Vec<u64>,
    pub rank_lower: u64,
    pub rank_upper: u64,
}

/// d_i = (sum_j (i*n_j mod n)/n) - 1 for i >= 1 and d_0 = 0; the bounds sum
/// min(2*floor(d_i/p), d_{sigma(i)}) <= rank <= min(d_i, d_{sigma(i)}) over
/// all i, where sigma inverts i -> p*i mod n.
pub fn elkin_dims(cover: &CoverType, p: u64) -> Result<ElkinBounds, Error> {
    let n = cover.degree();
    if p % n == 0 || gcd(p, n) != 1 {
        return Err(Error::CharacteristicDividesCover { p, n });
    }
    let mut dims = Vec::with_capacity(n as usize);
    dims.push(0u64);
    for i in 1..n {
        let total: u64 = cover.exponents().iter().map(|&nj| (i * nj) % n).sum();
        debug_assert_eq!(total % n, 0);
        dims.push(total / n - 1);
    }
    // sigma = inverse of i -> p*i mod n
    let mut sigma = vec![0usize; n as usize];
    for i in 0..n {
        sigma[((p % n) * i % n) as usize] = i as usize;
    }
    let mut lower = 0u64;
    let mut upper = 0u64;
    for i in 0..n as usize {
        lower += (2 * (dims[i] / p)).min(dims[sigma[i]]);
        upper += dims[i].min(dims[sigma[i]]);
    }
    Ok(ElkinBounds {
        dims,
        rank_lower: lower,
        rank_upper: upper,
    })
}

/// The cover type of every member of the family: H_{a,b} is a cyclic cover of
/// the line of type (6; 1, 2, 3, 3, 3) via its order-6 automorphism.
pub fn family_cover_type() -> CoverType {
    CoverType::new(6, vec![1, 2, 3, 3, 3]).expect("valid by construction")
}

/// y^2 = x^10 + x^7 + a x^4 + b x right-hand side over GF(p^2).
pub fn family_poly(ctx: &FieldCtx, a: Fp2Element, b: Fp2Element) -> UniPoly<FieldCtx> {
    let mut c = vec![ctx.zero(); 11];
    c[10] = ctx.one();
    c[7] = ctx.one();
    c[4] = a;
    c[1] = b;
    UniPoly::new(*ctx, c)
}
