//! Decompositions of Picard-number-3 surfaces, `NS ≅ U ⊕ ⟨-2N⟩`.
//!
//! The combinatorial side (the set Σ of coprime factorizations, the
//! embedded hyperbolic planes and their multiplier invariants, Atkin–Lehner
//! matrices) is exact. Only [`period_point`], [`gamma0_equiv`] and
//! [`al_orbit_check`] work with floating point.

use std::fmt;

use num_complex::Complex64;

use crate::arith::{bezout, factorize, gcd, Mat2};
use crate::error::{Error, Result};

/// Default tolerance for comparisons in the upper half plane.
pub const DEFAULT_TOL: f64 = 1e-9;

const MAX_REDUCTION_STEPS: usize = 10_000;

/// A coprime factorization `N = r·s` with `r <= s` and `a·r + b·s = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SigmaEntry {
    pub r: i64,
    pub s: i64,
    pub a: i64,
    pub b: i64,
}

impl SigmaEntry {
    /// Builds an entry with the canonical Bezout pair.
    pub fn new(r: i64, s: i64) -> Result<Self> {
        let (a, b) = bezout(r, s)?;
        Ok(SigmaEntry { r, s, a, b })
    }

    fn validate(&self, n: i64) -> Result<()> {
        let ok = self.r >= 1
            && self.r <= self.s
            && self.r.checked_mul(self.s) == Some(n)
            && gcd(self.r, self.s) == 1
            && self.a as i128 * self.r as i128 + self.b as i128 * self.s as i128 == 1;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("{self:?} is not in Σ({n})")))
        }
    }
}

/// All coprime factorizations of `n`, ordered by `r`.
pub fn sigma_set(n: i64) -> Result<Vec<SigmaEntry>> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("N = {n} < 1")));
    }
    let mut out = Vec::new();
    let mut r = 1;
    while r * r <= n {
        if n % r == 0 && gcd(r, n / r) == 1 {
            out.push(SigmaEntry::new(r, n / r)?);
        }
        r += 1;
    }
    Ok(out)
}

/// A vector `x·e + y·f + z·l` of `U ⊕ ⟨-2N⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NSVector3 {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl NSVector3 {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        NSVector3 { x, y, z }
    }

    /// `(v, w)` in `U ⊕ ⟨-2N⟩`.
    pub fn pairing(&self, other: &NSVector3, n: i64) -> i128 {
        let w = |v: i64| v as i128;
        w(self.x) * w(other.y) + w(self.y) * w(other.x) - 2 * w(n) * w(self.z) * w(other.z)
    }
}

impl fmt::Display for NSVector3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// `(e_σ, f_σ, l_σ)`: a hyperbolic plane and its orthogonal complement.
pub fn embedding_vectors(n: i64, sigma: &SigmaEntry) -> Result<[NSVector3; 3]> {
    sigma.validate(n)?;
    let SigmaEntry { r, s, a, b } = *sigma;
    let e = NSVector3::new(r, s, 1);
    let f = NSVector3::new(b * b * s, a * a * r, -a * b);
    let l = NSVector3::new(2 * n * b, -2 * n * a, b * s - a * r);
    Ok([e, f, l])
}

/// Whether `(e, f, l)` has Gram matrix `U ⊕ ⟨-2N⟩`.
pub fn gram_relations_hold(vectors: &[NSVector3; 3], n: i64) -> bool {
    let [e, f, l] = vectors;
    e.pairing(e, n) == 0
        && f.pairing(f, n) == 0
        && e.pairing(f, n) == 1
        && l.pairing(l, n) == -2 * n as i128
        && e.pairing(l, n) == 0
        && f.pairing(l, n) == 0
}

/// `b·s - a·r mod 2N`; `l_σ/2N ≡ m·l/2N` in the discriminant group.
pub fn multiplier_invariant(n: i64, sigma: &SigmaEntry) -> Result<i64> {
    sigma.validate(n)?;
    Ok((sigma.b * sigma.s - sigma.a * sigma.r).rem_euclid(2 * n))
}

/// Hall divisors of `n` in increasing order.
pub fn hall_divisors(n: i64) -> Result<Vec<i64>> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("N = {n} < 1")));
    }
    let mut out = vec![1i64];
    for &(p, e) in factorize(n as u64).pairs() {
        let q = (p as i64).pow(e);
        let more: Vec<i64> = out.iter().map(|d| d * q).collect();
        out.extend(more);
    }
    out.sort_unstable();
    Ok(out)
}

/// An Atkin–Lehner matrix `(Qα β; Nγ Qδ)` of determinant `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ALMatrix {
    pub w: Mat2,
    pub n: i64,
    pub q: i64,
}

impl ALMatrix {
    /// Checks the shape conditions.
    pub fn is_valid(&self) -> bool {
        let [[a, _], [c, d]] = self.w.0;
        self.w.det() == self.q && a % self.q == 0 && d % self.q == 0 && c % self.n == 0
    }

    /// Möbius action on the upper half plane.
    pub fn apply(&self, tau: Complex64) -> Complex64 {
        mobius(&self.w, tau)
    }

    /// Whether `W² = Q·γ` with `γ ∈ Γ₀(N)`.
    pub fn squares_into_gamma0(&self) -> bool {
        let Ok(sq) = self.w.checked_mul(&self.w) else {
            return false;
        };
        divide_into_gamma0(&sq, self.q, self.n)
    }
}

impl fmt::Display for ALMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W_{} = {}", self.q, self.w)
    }
}

/// Whether `m / k` is an integer matrix in `Γ₀(N)`.
fn divide_into_gamma0(m: &Mat2, k: i64, n: i64) -> bool {
    if m.0.iter().flatten().any(|&x| x % k != 0) {
        return false;
    }
    let g = Mat2(m.0.map(|row| row.map(|x| x / k)));
    g.checked_det() == Ok(1) && g.get(1, 0) % n == 0
}

fn is_hall_divisor(n: i64, q: i64) -> bool {
    q >= 1 && n % q == 0 && gcd(q, n / q) == 1
}

/// The Atkin–Lehner matrix for the Hall divisor `q` of `n`.
pub fn atkin_lehner(n: i64, q: i64) -> Result<ALMatrix> {
    if n < 1 || !is_hall_divisor(n, q) {
        return Err(Error::InvalidArgument(format!("{q} is not a Hall divisor of {n}")));
    }
    let w = if q == 1 {
        Mat2::IDENTITY
    } else if q == n {
        Mat2::new(0, -1, n, 0)
    } else {
        // Q·α - (N/Q)·β = 1 with γ = δ = 1
        let (alpha, b) = bezout(q, n / q)?;
        Mat2::new(q * alpha, -b, n, q)
    };
    let al = ALMatrix { w, n, q };
    if !al.is_valid() || !al.squares_into_gamma0() {
        return Err(Error::Inconsistent(format!("bad Atkin–Lehner matrix {al}")));
    }
    Ok(al)
}

/// Checks `W_Q·W_Q' = c·g·W_Q''` with `g ∈ Γ₀(N)`, `Q'' = QQ'/gcd(Q, Q')²`
/// and `c = gcd(Q, Q')`.
pub fn al_product_check(n: i64, q1: i64, q2: i64) -> Result<bool> {
    let w1 = atkin_lehner(n, q1)?;
    let w2 = atkin_lehner(n, q2)?;
    let c = gcd(q1, q2);
    let q3 = q1 / c * (q2 / c);
    let w3 = atkin_lehner(n, q3)?;
    // W_Q W_Q' adj(W_Q'') = c·Q''·g
    let p = w1.w.checked_mul(&w2.w)?.checked_mul(&w3.w.adjugate())?;
    Ok(divide_into_gamma0(&p, c * q3, n))
}

fn mobius(m: &Mat2, tau: Complex64) -> Complex64 {
    let [[a, b], [c, d]] = m.0.map(|row| row.map(|x| x as f64));
    (tau * a + b) / (tau * c + d)
}

fn check_upper(tau: Complex64) -> Result<()> {
    if tau.im > 0.0 && tau.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{tau} is not in the upper half plane")))
    }
}

/// The `Γ₀(N)` moduli point `(u·rτ - v)/(s·rτ + r)`, `u·r + v·s = 1`, of the
/// decomposition σ of `E_τ × E_{Nτ}`-type data.
pub fn period_point(n: i64, sigma: &SigmaEntry, tau: Complex64) -> Result<Complex64> {
    check_upper(tau)?;
    if sigma.r.checked_mul(sigma.s) != Some(n) || gcd(sigma.r, sigma.s) != 1 {
        return Err(Error::InvalidArgument(format!("{sigma:?} is not a factorization of {n}")));
    }
    let (u, v) = bezout(sigma.r, sigma.s)?;
    let (r, s) = (sigma.r as f64, sigma.s as f64);
    let rt = tau * r;
    Ok((rt * u as f64 - v as f64) / (rt * s + r))
}

/// `σ` with `r` and `s` exchanged (the ordered pair in the other order).
pub fn swapped(sigma: &SigmaEntry) -> Result<SigmaEntry> {
    let (a, b) = bezout(sigma.s, sigma.r)?;
    Ok(SigmaEntry { r: sigma.s, s: sigma.r, a, b })
}

/// Reduces `tau` into the standard fundamental domain of `SL₂(Z)`;
/// returns the reduced point and `g` with `g·tau = reduced`.
pub fn reduce_to_fundamental_domain(tau: Complex64) -> Result<(Complex64, Mat2)> {
    check_upper(tau)?;
    let mut z = tau;
    let mut g = Mat2::IDENTITY;
    for _ in 0..MAX_REDUCTION_STEPS {
        let shift = z.re.round();
        if shift != 0.0 {
            if shift.abs() > i64::MAX as f64 / 4.0 {
                return Err(Error::Overflow("fundamental domain reduction"));
            }
            z.re -= shift;
            g = Mat2::new(1, -(shift as i64), 0, 1).checked_mul(&g)?;
        }
        if z.norm_sqr() < 1.0 {
            z = -z.inv();
            g = Mat2::new(0, -1, 1, 0).checked_mul(&g)?;
        } else {
            return Ok((z, g));
        }
    }
    Err(Error::NoConvergence)
}

fn near_elliptic(z: Complex64, tol: f64) -> bool {
    let h = 3f64.sqrt() / 2.0;
    [Complex64::new(0.0, 1.0), Complex64::new(-0.5, h), Complex64::new(0.5, h)]
        .iter()
        .any(|e| (z - e).norm() < tol)
}

/// Whether `tau1` and `tau2` are in the same `Γ₀(N)` orbit.
pub fn gamma0_equiv(tau1: Complex64, tau2: Complex64, n: i64, tol: f64) -> Result<bool> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("N = {n} < 1")));
    }
    let (z1, g1) = reduce_to_fundamental_domain(tau1)?;
    let (z2, g2) = reduce_to_fundamental_domain(tau2)?;
    if near_elliptic(z1, tol) || near_elliptic(z2, tol) {
        return Err(Error::EllipticPoint);
    }
    // points on the boundary of the domain have a second reduced form
    let adjustments = [
        Mat2::IDENTITY,
        Mat2::new(1, 1, 0, 1),
        Mat2::new(1, -1, 0, 1),
        Mat2::new(0, -1, 1, 0),
        Mat2::new(0, -1, 1, 1),
        Mat2::new(0, -1, 1, -1),
        Mat2::new(1, -1, 1, 0),
        Mat2::new(-1, -1, 1, 0),
    ];
    let g1_inv = g1.unimodular_inverse().ok_or(Error::Singular)?;
    for adj in adjustments {
        if (mobius(&adj, z2) - z1).norm() >= tol {
            continue;
        }
        // tau1 = g1⁻¹·adj·g2·tau2
        let m = g1_inv.checked_mul(&adj)?.checked_mul(&g2)?;
        if m.get(1, 0) % n == 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Checks that the Atkin–Lehner orbit of `tau` equals the set of period
/// points of all ordered decompositions, as points of `Γ₀(N)\H`.
pub fn al_orbit_check(n: i64, tau: Complex64, tol: f64) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("N = {n} < 2")));
    }
    check_upper(tau)?;
    let orbit = hall_divisors(n)?
        .into_iter()
        .map(|q| Ok(atkin_lehner(n, q)?.apply(tau)))
        .collect::<Result<Vec<_>>>()?;
    let mut points = Vec::new();
    for sigma in sigma_set(n)? {
        points.push(period_point(n, &sigma, tau)?);
        points.push(period_point(n, &swapped(&sigma)?, tau)?);
    }
    if orbit.len() != points.len() {
        return Ok(false);
    }
    let covered = |xs: &[Complex64], ys: &[Complex64]| -> Result<bool> {
        for &x in xs {
            let mut found = false;
            for &y in ys {
                if gamma0_equiv(x, y, n, tol)? {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(covered(&orbit, &points)? && covered(&points, &orbit)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sigma_examples() {
        let pairs = |n| -> Vec<(i64, i64)> {
            sigma_set(n).unwrap().iter().map(|s| (s.r, s.s)).collect()
        };
        assert_eq!(pairs(1), vec![(1, 1)]);
        assert_eq!(pairs(6), vec![(1, 6), (2, 3)]);
        assert_eq!(pairs(12), vec![(1, 12), (3, 4)]);
        assert_eq!(sigma_set(6).unwrap()[1], SigmaEntry { r: 2, s: 3, a: 2, b: -1 });
        assert!(sigma_set(0).is_err());
    }

    #[test]
    fn embedding_examples() {
        let s = SigmaEntry { r: 2, s: 3, a: 2, b: -1 };
        let v = embedding_vectors(6, &s).unwrap();
        assert_eq!(v, [NSVector3::new(2, 3, 1), NSVector3::new(3, 8, 2), NSVector3::new(-12, -24, -7)]);
        assert!(gram_relations_hold(&v, 6));

        let s = SigmaEntry { r: 1, s: 6, a: 1, b: 0 };
        let v = embedding_vectors(6, &s).unwrap();
        assert_eq!(v, [NSVector3::new(1, 6, 1), NSVector3::new(0, 1, 0), NSVector3::new(0, -12, -1)]);
        assert!(gram_relations_hold(&v, 6));

        let s = SigmaEntry::new(1, 1).unwrap();
        assert!(gram_relations_hold(&embedding_vectors(1, &s).unwrap(), 1));

        let bad = SigmaEntry { r: 2, s: 3, a: 1, b: 1 };
        assert!(embedding_vectors(6, &bad).is_err());
        assert!(embedding_vectors(7, &SigmaEntry::new(2, 3).unwrap()).is_err());
    }

    #[test]
    fn multiplier_examples() {
        let m = |r, s, n| multiplier_invariant(n, &SigmaEntry::new(r, s).unwrap()).unwrap();
        assert_eq!(m(1, 6, 6), 11);
        assert_eq!(m(2, 3, 6), 5);
        assert_eq!(m(1, 1, 1), 1);
    }

    #[test]
    fn atkin_lehner_examples() {
        assert_eq!(atkin_lehner(6, 6).unwrap().w, Mat2::new(0, -1, 6, 0));
        assert_eq!(atkin_lehner(6, 1).unwrap().w, Mat2::IDENTITY);
        assert_eq!(atkin_lehner(6, 2).unwrap().w, Mat2::new(4, 1, 6, 2));
        assert!(atkin_lehner(12, 2).is_err());
        assert!(atkin_lehner(12, 5).is_err());
        assert_eq!(hall_divisors(12).unwrap(), vec![1, 3, 4, 12]);
    }

    #[test]
    fn al_products() {
        for n in 1..=40 {
            let hall = hall_divisors(n).unwrap();
            for &q1 in &hall {
                for &q2 in &hall {
                    assert!(al_product_check(n, q1, q2).unwrap(), "N={n} Q={q1} Q'={q2}");
                }
            }
        }
    }

    #[test]
    fn period_point_examples() {
        let tau = c(0.3, 1.7);
        let s = SigmaEntry::new(2, 3).unwrap();
        let p = period_point(6, &s, tau).unwrap();
        // bezout(2, 3) = (2, -1)
        let expected = (tau * 2.0 * 2.0 + 1.0) / (tau * 6.0 + 2.0);
        assert!((p - expected).norm() < 1e-12);
        assert!(p.im > 0.0);

        let s = SigmaEntry::new(1, 6).unwrap();
        assert!(gamma0_equiv(period_point(6, &s, tau).unwrap(), tau, 6, DEFAULT_TOL).unwrap());

        // τ = i: τ* = i/(2i + 1) = (1 0; 2 1)·i, and (1 0; 2 1) ∈ Γ₀(2)
        let i = c(0.0, 1.0);
        let p = period_point(2, &SigmaEntry::new(1, 2).unwrap(), i).unwrap();
        assert!((p - mobius(&Mat2::new(1, 0, 2, 1), i)).norm() < 1e-15);

        assert!(period_point(6, &s, c(0.3, -1.0)).is_err());
    }

    #[test]
    fn gamma0_examples() {
        let tau = c(0.3, 1.7);
        let tol = DEFAULT_TOL;
        assert!(gamma0_equiv(tau, tau + 1.0, 6, tol).unwrap());
        assert!(gamma0_equiv(tau, tau / (tau * 6.0 + 1.0), 6, tol).unwrap());
        assert!(!gamma0_equiv(tau, -tau.inv(), 6, tol).unwrap());
        assert!(gamma0_equiv(tau, -tau.inv(), 1, tol).unwrap());
        assert_eq!(gamma0_equiv(c(0.0, 1.0), tau, 6, tol), Err(Error::EllipticPoint));
        assert_eq!(
            gamma0_equiv(c(3.5, 3f64.sqrt() / 2.0), tau, 6, tol),
            Err(Error::EllipticPoint)
        );
    }

    #[test]
    fn reduction_lands_in_domain() {
        let (z, g) = reduce_to_fundamental_domain(c(12.345, 0.0071)).unwrap();
        assert!(z.re.abs() <= 0.5 + 1e-12 && z.norm() >= 1.0 - 1e-12);
        assert_eq!(g.det(), 1);
        assert!((mobius(&g, c(12.345, 0.0071)) - z).norm() < 1e-6);
    }

    #[test]
    fn orbit_examples() {
        assert!(al_orbit_check(2, c(0.37, 1.41), DEFAULT_TOL).unwrap());
        assert!(al_orbit_check(6, c(0.3, 1.7), DEFAULT_TOL).unwrap());
        assert!(al_orbit_check(15, c(-0.21, 1.33), DEFAULT_TOL).unwrap());
        assert!(al_orbit_check(1, c(0.3, 1.7), DEFAULT_TOL).is_err());
    }
}
