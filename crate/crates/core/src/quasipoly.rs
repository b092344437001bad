//! Quasi-polynomials in an integer variable: `f(i) = polys[i mod p](i)`.
//!
//! These are the entry formulas of band rules. The class is closed under sums,
//! products and affine substitution `i -> a*i + b` with integer `a >= 1`, which
//! is everything operator composition needs.

use num_traits::{One, Signed, Zero};

use crate::scalar::{abs, int, lcm, Scalar};

type Poly = Vec<Scalar>;

#[derive(Debug, Clone)]
pub struct QuasiPoly {
    /// Coefficients in increasing degree, one polynomial per residue class.
    polys: Vec<Poly>,
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_eval(p: &[Scalar], x: &Scalar) -> Scalar {
    p.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
}

fn poly_add(a: &[Scalar], b: &[Scalar]) -> Poly {
    let n = a.len().max(b.len());
    let z = Scalar::zero();
    trim((0..n).map(|k| a.get(k).unwrap_or(&z) + b.get(k).unwrap_or(&z)).collect())
}

fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// `p(a*x + b)` by Horner's scheme on polynomials.
fn poly_affine(p: &[Scalar], a: &Scalar, b: &Scalar) -> Poly {
    let lin = vec![b.clone(), a.clone()];
    let mut acc: Poly = Vec::new();
    for c in p.iter().rev() {
        acc = poly_add(&poly_mul(&acc, &lin), std::slice::from_ref(c));
    }
    trim(acc)
}

impl QuasiPoly {
    pub fn constant(c: Scalar) -> Self {
        QuasiPoly { polys: vec![trim(vec![c])] }
    }

    pub fn zero() -> Self {
        QuasiPoly { polys: vec![Vec::new()] }
    }

    pub fn polynomial(coeffs: Vec<Scalar>) -> Self {
        QuasiPoly { polys: vec![trim(coeffs)] }
    }

    /// `f(i) = values[i mod p]`.
    pub fn periodic(values: Vec<Scalar>) -> Self {
        assert!(!values.is_empty(), "periodic pattern must be nonempty");
        QuasiPoly { polys: values.into_iter().map(|v| trim(vec![v])).collect() }.normalized()
    }

    /// One polynomial per residue modulo `polys.len()`.
    pub fn from_residues(polys: Vec<Vec<Scalar>>) -> Self {
        assert!(!polys.is_empty(), "at least one residue class is needed");
        QuasiPoly { polys: polys.into_iter().map(trim).collect() }.normalized()
    }

    pub fn period(&self) -> usize {
        self.polys.len()
    }

    pub fn residue_poly(&self, rho: usize) -> &[Scalar] {
        &self.polys[rho % self.polys.len()]
    }

    pub fn residues(&self) -> &[Poly] {
        &self.polys
    }

    pub fn eval(&self, i: i64) -> Scalar {
        let p = self.polys.len() as i64;
        poly_eval(&self.polys[i.rem_euclid(p) as usize], &int(i))
    }

    pub fn is_zero(&self) -> bool {
        self.polys.iter().all(Vec::is_empty)
    }

    /// Constant value when the function is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.polys.as_slice() {
            [p] if p.len() <= 1 => Some(p.first().cloned().unwrap_or_else(Scalar::zero)),
            _ => None,
        }
    }

    /// Every residue polynomial has degree at most zero.
    pub fn is_periodic(&self) -> bool {
        self.polys.iter().all(|p| p.len() <= 1)
    }

    /// Same function written with period `q`, a multiple of the current period.
    pub fn extended(&self, q: usize) -> Vec<Poly> {
        (0..q).map(|r| self.polys[r % self.polys.len()].clone()).collect()
    }

    /// Shrinks to the minimal period.
    pub fn normalized(self) -> Self {
        let n = self.polys.len();
        for d in 1..=n {
            if n.is_multiple_of(d) && (0..n).all(|r| self.polys[r] == self.polys[r % d]) {
                return QuasiPoly { polys: self.polys[..d].to_vec() };
            }
        }
        self
    }

    pub fn add(&self, other: &QuasiPoly) -> QuasiPoly {
        let q = lcm(self.period(), other.period());
        let (a, b) = (self.extended(q), other.extended(q));
        QuasiPoly { polys: a.iter().zip(&b).map(|(x, y)| poly_add(x, y)).collect() }.normalized()
    }

    pub fn mul(&self, other: &QuasiPoly) -> QuasiPoly {
        let q = lcm(self.period(), other.period());
        let (a, b) = (self.extended(q), other.extended(q));
        QuasiPoly { polys: a.iter().zip(&b).map(|(x, y)| poly_mul(x, y)).collect() }.normalized()
    }

    pub fn scale(&self, c: &Scalar) -> QuasiPoly {
        self.mul(&QuasiPoly::constant(c.clone()))
    }

    /// `g(i) = f(a*i + b)` for an integer `a >= 1`.
    pub fn compose_affine(&self, a: i64, b: i64) -> QuasiPoly {
        assert!(a >= 1, "affine substitution needs a positive slope");
        let p = self.period() as i64;
        let (sa, sb) = (int(a), int(b));
        let polys = (0..p)
            .map(|rho| {
                let src = (a * rho + b).rem_euclid(p) as usize;
                poly_affine(&self.polys[src], &sa, &sb)
            })
            .collect();
        QuasiPoly { polys }.normalized()
    }

    /// A bound `B` such that residue `rho`'s polynomial has no root with `|i| > B`.
    /// `None` when the polynomial is identically zero.
    pub fn root_bound(&self, rho: usize) -> Option<Scalar> {
        let p = self.residue_poly(rho);
        let lead = p.last()?;
        let m = p[..p.len() - 1].iter().map(|c| abs(&(c / lead))).fold(Scalar::zero(), |a, b| a.max(b));
        Some(Scalar::one() + m)
    }

    /// Whether the function is nonnegative for all `i >= from`; exact for
    /// periodic functions, checked on the root-free range for the rest.
    pub fn nonneg_from(&self, from: i64) -> bool {
        let p = self.period() as i64;
        (0..p).all(|rho| {
            let poly = self.residue_poly(rho as usize);
            let Some(bound) = self.root_bound(rho as usize) else { return true };
            let b = bound.ceil().to_integer();
            let hi: i64 = b.try_into().unwrap_or(i64::MAX / 4).max(from) + p;
            let mut i = from + (rho - from).rem_euclid(p);
            while i <= hi {
                if poly_eval(poly, &int(i)).is_negative() {
                    return false;
                }
                i += p;
            }
            !poly.last().is_some_and(Signed::is_negative)
        })
    }
}

impl PartialEq for QuasiPoly {
    fn eq(&self, other: &Self) -> bool {
        let q = lcm(self.period(), other.period());
        self.extended(q) == other.extended(q)
    }
}

impl Eq for QuasiPoly {}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qp(res: &[&[i64]]) -> QuasiPoly {
        QuasiPoly::from_residues(res.iter().map(|p| p.iter().map(|c| int(*c)).collect()).collect())
    }

    #[test]
    fn periodic_collapses_to_minimal_period() {
        let f = QuasiPoly::periodic(vec![int(1), int(2), int(1), int(2)]);
        assert_eq!(f.period(), 2);
        assert_eq!(QuasiPoly::periodic(vec![int(3), int(3)]).as_constant(), Some(int(3)));
    }

    #[test]
    fn equality_across_periods() {
        assert_eq!(qp(&[&[1]]), qp(&[&[1], &[1], &[1]]));
        assert_ne!(qp(&[&[1]]), qp(&[&[1], &[0]]));
    }

    #[test]
    fn affine_substitution() {
        // f(i) = i^2 on even i, 1 on odd i;  g(i) = f(2i+1) = 1
        let f = qp(&[&[0, 0, 1], &[1]]);
        assert_eq!(f.compose_affine(2, 1).as_constant(), Some(int(1)));
        let g = f.compose_affine(2, 0);
        assert_eq!(g.eval(3), int(36));
    }

    #[test]
    fn root_bound_covers_roots() {
        // (i-3)(i+5) = i^2 + 2i - 15
        let f = qp(&[&[-15, 2, 1]]);
        assert!(f.root_bound(0).unwrap() >= int(5));
        assert_eq!(qp(&[&[]]).root_bound(0), None);
        assert!(!f.nonneg_from(0));
        assert!(f.nonneg_from(3));
    }

    fn arb_qp() -> impl Strategy<Value = QuasiPoly> {
        prop::collection::vec(prop::collection::vec(-4i64..5, 0..3), 1..4).prop_map(|res| {
            QuasiPoly::from_residues(res.into_iter().map(|p| p.into_iter().map(int).collect()).collect())
        })
    }

    proptest! {
        #[test]
        fn ring_operations_match_pointwise(f in arb_qp(), g in arb_qp(), i in -30i64..30) {
            prop_assert_eq!(f.add(&g).eval(i), f.eval(i) + g.eval(i));
            prop_assert_eq!(f.mul(&g).eval(i), f.eval(i) * g.eval(i));
        }

        #[test]
        fn affine_matches_pointwise(f in arb_qp(), a in 1i64..4, b in -5i64..6, i in -20i64..20) {
            prop_assert_eq!(f.compose_affine(a, b).eval(i), f.eval(a * i + b));
        }
    }
}
