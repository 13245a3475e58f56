//! Bivariate polynomials in the curve parameters (a, b) over GF(p^2), stored
//! as a dense triangular table: monomial a^i b^j lives at (i, j) with
//! i + j <= bound. The parametric Cartier-Manin entries are near-dense of
//! total degree (p-1)/2, so dense triangular indexing keeps the recurrence
//! steps cache-friendly.
//!
//! The `bound` is a capacity, never a truncation device: any operation that
//! would push a nonzero monomial past it fails loudly.

use crate::error::Error;
use crate::fieldcore::{FieldCtx, Fp2Element};
use crate::unipoly::{NewtonInterpolator, UniPoly};

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: FieldCtx,
    bound: usize,
    /// Row-major by a-degree i; row i holds the b-degrees 0..=bound-i.
    coeffs: Vec<Fp2Element>,
}

fn table_len(bound: usize) -> usize {
    (bound + 1) * (bound + 2) / 2
}

impl BiPoly {
    pub fn zero(field: FieldCtx, bound: usize) -> Self {
        BiPoly {
            field,
            bound,
            coeffs: vec![field.zero(); table_len(bound)],
        }
    }

    /// The constant polynomial c.
    pub fn constant(field: FieldCtx, bound: usize, c: Fp2Element) -> Self {
        let mut out = Self::zero(field, bound);
        out.set(0, 0, c);
        out
    }

    pub fn field(&self) -> FieldCtx {
        self.field
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    #[inline]
    fn offset(&self, i: usize, j: usize) -> usize {
        debug_assert!(i + j <= self.bound);
        i * (self.bound + 1) - i * i.saturating_sub(1) / 2 + j
    }

    pub fn get(&self, i: usize, j: usize) -> Fp2Element {
        if i + j > self.bound {
            self.field.zero()
        } else {
            self.coeffs[self.offset(i, j)]
        }
    }

    pub fn set(&mut self, i: usize, j: usize, c: Fp2Element) {
        assert!(i + j <= self.bound, "monomial outside the bound");
        let k = self.offset(i, j);
        self.coeffs[k] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Iterate the stored monomials (i, j, coeff), zeros included.
    pub fn monomials(&self) -> impl Iterator<Item = (usize, usize, Fp2Element)> + '_ {
        (0..=self.bound).flat_map(move |i| {
            (0..=self.bound - i).map(move |j| (i, j, self.coeffs[self.offset(i, j)]))
        })
    }

    /// Actual total degree, ignoring the capacity; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.monomials()
            .filter(|(_, _, c)| !c.is_zero())
            .map(|(i, j, _)| i + j)
            .max()
    }

    /// Largest a-exponent carrying a nonzero coefficient.
    pub fn deg_a(&self) -> Option<usize> {
        self.monomials()
            .filter(|(_, _, c)| !c.is_zero())
            .map(|(i, _, _)| i)
            .max()
    }

    /// Largest b-exponent carrying a nonzero coefficient.
    pub fn deg_b(&self) -> Option<usize> {
        self.monomials()
            .filter(|(_, _, c)| !c.is_zero())
            .map(|(_, j, _)| j)
            .max()
    }

    /// Repack into a (usually smaller) capacity. Fails if a nonzero monomial
    /// does not fit.
    pub fn with_bound(&self, bound: usize) -> Result<Self, Error> {
        let mut out = Self::zero(self.field, bound);
        for (i, j, c) in self.monomials() {
            if c.is_zero() {
                continue;
            }
            if i + j > bound {
                return Err(Error::BoundExceeded {
                    degree: i + j,
                    bound,
                });
            }
            out.set(i, j, c);
        }
        Ok(out)
    }

    fn check_ctx(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "mixed field contexts rejected: operands live in different fields"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ctx(other);
        if self.bound == other.bound {
            let mut out = self.clone();
            for (k, c) in other.coeffs.iter().enumerate() {
                out.coeffs[k] = self.field.add(out.coeffs[k], *c);
            }
            return out;
        }
        let bound = self.bound.max(other.bound);
        let mut out = Self::zero(self.field, bound);
        for (i, j, c) in self.monomials() {
            out.set(i, j, c);
        }
        for (i, j, c) in other.monomials() {
            let k = out.offset(i, j);
            out.coeffs[k] = self.field.add(out.coeffs[k], c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_ctx(other);
        let bound = self.bound.max(other.bound);
        let mut out = Self::zero(self.field, bound);
        for (i, j, c) in self.monomials() {
            out.set(i, j, c);
        }
        for (i, j, c) in other.monomials() {
            let k = out.offset(i, j);
            out.coeffs[k] = self.field.sub(out.coeffs[k], c);
        }
        out
    }

    pub fn scalar_mul(&self, c: Fp2Element) -> Self {
        let mut out = self.clone();
        for v in out.coeffs.iter_mut() {
            *v = self.field.mul(*v, c);
        }
        out
    }

    /// Multiply by the integer k reduced mod p (recurrence scalars may be
    /// negative).
    pub fn scalar_mul_int(&self, k: i128) -> Self {
        self.scalar_mul(self.field.scalar_i128(k))
    }

    /// Multiply by a: shift (i, j) -> (i+1, j). Fails if a nonzero monomial
    /// would leave the capacity (truncation would falsify the recurrence).
    pub fn mul_by_a(&self) -> Result<Self, Error> {
        let mut out = Self::zero(self.field, self.bound);
        for (i, j, c) in self.monomials() {
            if c.is_zero() {
                continue;
            }
            if i + 1 + j > self.bound {
                return Err(Error::BoundExceeded {
                    degree: i + 1 + j,
                    bound: self.bound,
                });
            }
            out.set(i + 1, j, c);
        }
        Ok(out)
    }

    /// Multiply by b: shift (i, j) -> (i, j+1).
    pub fn mul_by_b(&self) -> Result<Self, Error> {
        let mut out = Self::zero(self.field, self.bound);
        for (i, j, c) in self.monomials() {
            if c.is_zero() {
                continue;
            }
            if i + j + 1 > self.bound {
                return Err(Error::BoundExceeded {
                    degree: i + j + 1,
                    bound: self.bound,
                });
            }
            out.set(i, j + 1, c);
        }
        Ok(out)
    }

    /// Exact division by b. A monomial with b-degree 0 and nonzero coefficient
    /// falsifies the recurrence derivation, so it aborts the run as an error.
    pub fn exact_div_b(&self) -> Result<Self, Error> {
        let mut out = Self::zero(self.field, self.bound);
        for (i, j, c) in self.monomials() {
            if c.is_zero() {
                continue;
            }
            if j == 0 {
                return Err(Error::NotDivisibleByB { a_degree: i });
            }
            out.set(i, j - 1, c);
        }
        Ok(out)
    }

    /// Substitute b = b0, producing a univariate polynomial in a
    /// (Horner in b per a-row).
    pub fn eval_b(&self, b0: Fp2Element) -> UniPoly<FieldCtx> {
        let f = self.field;
        let mut out = Vec::with_capacity(self.bound + 1);
        for i in 0..=self.bound {
            let mut acc = f.zero();
            for j in (0..=self.bound - i).rev() {
                acc = f.add(f.mul(acc, b0), self.coeffs[self.offset(i, j)]);
            }
            out.push(acc);
        }
        UniPoly::new(f, out)
    }

    /// Full substitution homomorphism.
    pub fn eval_ab(&self, a0: Fp2Element, b0: Fp2Element) -> Fp2Element {
        self.eval_b(b0).eval(&a0)
    }

    /// Leading a-coefficient as a polynomial in b: the coefficients of
    /// a^{deg_a}. None for the zero polynomial.
    pub fn leading_coeff_a(&self) -> Option<UniPoly<FieldCtx>> {
        let da = self.deg_a()?;
        let coeffs: Vec<Fp2Element> = (0..=self.bound - da).map(|j| self.get(da, j)).collect();
        Some(UniPoly::new(self.field, coeffs))
    }
}

impl std::fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, j, c) in self.monomials() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*a^{i}*b^{j}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Resultant of F and G with respect to a, a polynomial in b.
///
/// Evaluation-interpolation: walk GF(p^2) in its fixed enumeration order,
/// keep the points where both leading a-coefficients stay nonzero (so the
/// specialized resultant equals the specialized Sylvester determinant),
/// take univariate resultants there and Newton-interpolate from
/// D + 1 = deg_a(F)*deg_b(G) + deg_a(G)*deg_b(F) + 1 good points. If the
/// field is too small to supply that many good points, fall back to the
/// Sylvester determinant over GF(p^2)[b].
pub fn resultant_wrt_a(fp: &BiPoly, gp: &BiPoly) -> Result<UniPoly<FieldCtx>, Error> {
    fp.check_ctx(gp);
    let field = fp.field();
    let da_f = fp.deg_a().ok_or(Error::ZeroInput("resultant_wrt_a"))?;
    let da_g = gp.deg_a().ok_or(Error::ZeroInput("resultant_wrt_a"))?;
    assert!(
        da_f >= 1 && da_g >= 1,
        "resultant_wrt_a expects positive a-degree in both operands"
    );
    let db_f = fp.deg_b().unwrap_or(0);
    let db_g = gp.deg_b().unwrap_or(0);
    let target = da_f * db_g + da_g * db_f + 1;

    let lc_f = fp.leading_coeff_a().expect("nonzero");
    let lc_g = gp.leading_coeff_a().expect("nonzero");

    let mut points = Vec::with_capacity(target);
    for b0 in field.enumerate() {
        if points.len() == target {
            break;
        }
        if lc_f.eval(&b0).is_zero() || lc_g.eval(&b0).is_zero() {
            continue;
        }
        points.push(b0);
    }
    if points.len() < target {
        log::warn!(
            "resultant_wrt_a: only {} of {} usable points in GF({}^2); using the Sylvester determinant fallback",
            points.len(),
            target,
            field.p()
        );
        return sylvester_resultant_in_b(fp, gp);
    }

    let values = crate::par::try_map_collect(points.clone(), |b0| {
        fp.eval_b(b0).resultant(&gp.eval_b(b0))
    })?;
    let mut newton = NewtonInterpolator::new(field);
    for (x, y) in points.into_iter().zip(values) {
        newton.push(x, y)?;
    }
    newton.poly()
}

/// Sylvester determinant of (F, G) with respect to a, entries in GF(p^2)[b],
/// by fraction-free (Bareiss) elimination. Exact but quartic; only the
/// fallback path and the test oracle use it.
pub fn sylvester_resultant_in_b(fp: &BiPoly, gp: &BiPoly) -> Result<UniPoly<FieldCtx>, Error> {
    let field = fp.field();
    let da_f = fp.deg_a().ok_or(Error::ZeroInput("sylvester_resultant_in_b"))?;
    let da_g = gp.deg_a().ok_or(Error::ZeroInput("sylvester_resultant_in_b"))?;
    let n = da_f + da_g;
    let coeff_poly = |p: &BiPoly, i: usize| {
        let bound = p.bound();
        let coeffs: Vec<Fp2Element> = (0..=bound.saturating_sub(i))
            .map(|j| p.get(i, j))
            .collect();
        UniPoly::new(field, coeffs)
    };
    let mut m: Vec<Vec<UniPoly<FieldCtx>>> = Vec::with_capacity(n);
    for row in 0..da_g {
        let mut r = vec![UniPoly::zero(field); n];
        for k in 0..=da_f {
            r[row + da_f - k] = coeff_poly(fp, k);
        }
        m.push(r);
    }
    for row in 0..da_f {
        let mut r = vec![UniPoly::zero(field); n];
        for k in 0..=da_g {
            r[row + da_g - k] = coeff_poly(gp, k);
        }
        m.push(r);
    }

    // Bareiss: division-free apart from exact divisions by the previous pivot
    let mut sign_flip = false;
    let mut prev = UniPoly::one(field);
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => return Ok(UniPoly::zero(field)),
        };
        if piv != col {
            m.swap(piv, col);
            sign_flip = !sign_flip;
        }
        for r in col + 1..n {
            for c in col + 1..n {
                let num = m[col][col].mul(&m[r][c]).sub(&m[r][col].mul(&m[col][c]));
                let (q, rem) = num.divrem(&prev)?;
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[r][c] = q;
            }
            m[r][col] = UniPoly::zero(field);
        }
        prev = m[col][col].clone();
    }
    let mut det = m[n - 1][n - 1].clone();
    if sign_flip {
        det = det.neg();
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::par::rng_for;

    fn f17() -> FieldCtx {
        FieldCtx::new(17).unwrap()
    }

    fn var_a(f: FieldCtx, bound: usize) -> BiPoly {
        let mut p = BiPoly::zero(f, bound);
        p.set(1, 0, f.one());
        p
    }

    fn var_b(f: FieldCtx, bound: usize) -> BiPoly {
        let mut p = BiPoly::zero(f, bound);
        p.set(0, 1, f.one());
        p
    }

    #[test]
    fn shift_ops_and_ring_identities() {
        let f = f17();
        let a = var_a(f, 4);
        let b = var_b(f, 4);
        // mul_by_a(b) = a*b
        let ab = b.mul_by_a().unwrap();
        assert_eq!(ab.get(1, 1), f.one());
        assert_eq!(ab.total_degree(), Some(2));
        // (a + b) + (a - b) = 2a
        let lhs = a.add(&b).add(&a.sub(&b));
        assert_eq!(lhs, a.scalar_mul(f.scalar(2)));
        // scalar 0 annihilates
        assert!(a.scalar_mul(f.zero()).is_zero());
    }

    #[test]
    fn bound_overflow_is_an_error() {
        let f = f17();
        let mut top = BiPoly::zero(f, 2);
        top.set(2, 0, f.one());
        assert!(matches!(
            top.mul_by_a(),
            Err(Error::BoundExceeded { degree: 3, bound: 2 })
        ));
        assert!(matches!(
            top.mul_by_b(),
            Err(Error::BoundExceeded { degree: 3, bound: 2 })
        ));
    }

    #[test]
    fn exact_div_b_inverts_mul_by_b() {
        let f = f17();
        let mut p = BiPoly::zero(f, 5);
        let mut rng = rng_for(0, &[99]);
        for (i, j) in [(0usize, 0usize), (1, 2), (3, 1), (0, 4)] {
            p.set(i, j, crate::fieldcore::Field::sample(&f, &mut rng));
        }
        assert_eq!(p.mul_by_b().unwrap().exact_div_b().unwrap(), p);
        // a*b + b^2 -> a + b
        let ab_plus_b2 = {
            let mut q = BiPoly::zero(f, 3);
            q.set(1, 1, f.one());
            q.set(0, 2, f.one());
            q
        };
        let div = ab_plus_b2.exact_div_b().unwrap();
        assert_eq!(div.get(1, 0), f.one());
        assert_eq!(div.get(0, 1), f.one());
        // bare a is not divisible
        assert!(matches!(
            var_a(f, 3).exact_div_b(),
            Err(Error::NotDivisibleByB { a_degree: 1 })
        ));
    }

    #[test]
    fn eval_b_substitution() {
        let f = f17();
        let sum = var_a(f, 3).add(&var_b(f, 3));
        let at1 = sum.eval_b(f.one());
        // a + 1
        assert_eq!(at1.coeff(0), f.one());
        assert_eq!(at1.coeff(1), f.one());
        assert_eq!(at1.degree(), Some(1));
    }

    #[test]
    fn eval_ab_is_a_homomorphism() {
        let f = f17();
        let mut rng = rng_for(1, &[7]);
        for _ in 0..40 {
            let mut p = BiPoly::zero(f, 4);
            let mut q = BiPoly::zero(f, 4);
            for i in 0..=4usize {
                for j in 0..=4 - i {
                    p.set(i, j, crate::fieldcore::Field::sample(&f, &mut rng));
                    q.set(i, j, crate::fieldcore::Field::sample(&f, &mut rng));
                }
            }
            let a0 = crate::fieldcore::Field::sample(&f, &mut rng);
            let b0 = crate::fieldcore::Field::sample(&f, &mut rng);
            assert_eq!(
                p.add(&q).eval_ab(a0, b0),
                f.add(p.eval_ab(a0, b0), q.eval_ab(a0, b0))
            );
            let pa = p.with_bound(5).unwrap().mul_by_a().unwrap();
            assert_eq!(pa.eval_ab(a0, b0), f.mul(a0, p.eval_ab(a0, b0)));
        }
    }

    #[test]
    fn linear_resultant_is_root_difference() {
        let f = f17();
        // Res_a(a - b, a - c*b) = c*b - b = (c - 1)*b up to sign, c constant
        let c = f.scalar(5);
        let fp = var_a(f, 2).sub(&var_b(f, 2));
        let gp = var_a(f, 2).sub(&var_b(f, 2).scalar_mul(c));
        let res = resultant_wrt_a(&fp, &gp).unwrap();
        // Res(a - r1, a - r2) = r1 - r2 with roots r1 = b, r2 = c*b
        assert_eq!(res.degree(), Some(1));
        let expected = f.sub(f.one(), c);
        let got = res.coeff(1);
        assert!(got == expected || got == f.neg(expected));
    }

    #[test]
    fn resultant_matches_sylvester_on_random_inputs() {
        let f = f17();
        let mut rng = rng_for(2, &[13]);
        for trial in 0..30 {
            let bound = 3 + trial % 2;
            let mut p = BiPoly::zero(f, bound);
            let mut q = BiPoly::zero(f, bound);
            for i in 0..=bound {
                for j in 0..=bound - i {
                    p.set(i, j, crate::fieldcore::Field::sample(&f, &mut rng));
                    q.set(i, j, crate::fieldcore::Field::sample(&f, &mut rng));
                }
            }
            if p.deg_a().unwrap_or(0) == 0 || q.deg_a().unwrap_or(0) == 0 {
                continue;
            }
            let via_interp = resultant_wrt_a(&p, &q).unwrap();
            let via_sylvester = sylvester_resultant_in_b(&p, &q).unwrap();
            assert_eq!(via_interp, via_sylvester, "trial {trial}");
        }
    }

    #[test]
    fn resultant_specializes_at_good_points() {
        let f = f17();
        let mut rng = rng_for(3, &[21]);
        let mut p = BiPoly::zero(f, 3);
        let mut q = BiPoly::zero(f, 3);
        for i in 0..=3usize {
            for j in 0..=3 - i {
                p.set(i, j, crate::fieldcore::Field::sample(&f, &mut rng));
                q.set(i, j, crate::fieldcore::Field::sample(&f, &mut rng));
            }
        }
        let res = resultant_wrt_a(&p, &q).unwrap();
        let lc_p = p.leading_coeff_a().unwrap();
        let lc_q = q.leading_coeff_a().unwrap();
        for b0 in f.enumerate().take(60) {
            if lc_p.eval(&b0).is_zero() || lc_q.eval(&b0).is_zero() {
                continue;
            }
            assert_eq!(
                res.eval(&b0),
                p.eval_b(b0).resultant(&q.eval_b(b0)).unwrap()
            );
        }
    }
}
