//! Discriminant forms of rank-2 even lattices.
//!
//! A [`FiniteQuadraticForm`] lives on `Z/d1 ⊕ Z/d2` (`d1 | d2`) and is
//! determined by `q(g1)`, `q(g2)` in `Q/2Z` and `b(g1, g2)` in `Q/Z`. All
//! values are kept as integer numerators over the common denominator
//! `2·d2`, so equality is plain integer comparison and nothing here touches
//! floating point.
//!
//! Two routes compute `|O(D_L)|`: [`global_order`] evaluates the closed
//! formula from the invariant factors and the 2-adic type, while
//! [`brute_force_order`] enumerates the automorphisms of the finite form.
//! [`local_order`] gives the order prime by prime.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;

use crate::arith::{chi, factorize, gcd, snf_2x2, tau, tau_tilde, Mat2};
use crate::error::{Error, Result};
use crate::qform::{EvenBinaryLattice, Isometry2};

/// Default limit on `|D|` for brute-force enumeration.
pub const DEFAULT_GUARD: u64 = 4096;

/// An element `x·g1 + y·g2`, stored reduced as `(x mod d1, y mod d2)`.
pub type Elem = (i64, i64);

/// A finite quadratic form on a group of length at most 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteQuadraticForm {
    d1: i64,
    d2: i64,
    // q(g1), q(g2) are q11/den, q22/den mod 2; b(g1, g2) is b12/den mod 1
    den: i64,
    q11: i64,
    q22: i64,
    b12: i64,
}

fn to_numerator(r: Ratio<i64>, den: i64, what: &str) -> Result<i64> {
    if den % r.denom() != 0 {
        return Err(Error::MalformedForm(format!(
            "{what} = {r} has denominator not dividing {den}"
        )));
    }
    Ok(r.numer() * (den / r.denom()))
}

impl FiniteQuadraticForm {
    /// Builds a form from generator orders and rational values; validates
    /// well-definedness and non-degeneracy.
    pub fn new(
        d1: i64,
        d2: i64,
        q11: Ratio<i64>,
        q22: Ratio<i64>,
        b12: Ratio<i64>,
    ) -> Result<Self> {
        if d1 < 1 || d2 < 1 || d2 % d1 != 0 {
            return Err(Error::MalformedForm(format!(
                "group orders ({d1}, {d2}) must satisfy 1 <= d1 | d2"
            )));
        }
        let den = 2 * d2;
        let form = FiniteQuadraticForm {
            d1,
            d2,
            den,
            q11: to_numerator(q11, den, "q11")?.rem_euclid(2 * den),
            q22: to_numerator(q22, den, "q22")?.rem_euclid(2 * den),
            b12: to_numerator(b12, den, "b12")?.rem_euclid(den),
        };
        form.validate()?;
        Ok(form)
    }

    fn validate(&self) -> Result<()> {
        let den = self.den as i128;
        let (d1, d2) = (self.d1 as i128, self.d2 as i128);
        let (q11, q22, b12) = (self.q11 as i128, self.q22 as i128, self.b12 as i128);
        let ok = (d1 * d1 * q11) % (2 * den) == 0
            && (d2 * d2 * q22) % (2 * den) == 0
            && (d1 * q11) % den == 0
            && (d2 * q22) % den == 0
            && (d1 * b12) % den == 0;
        if !ok {
            return Err(Error::MalformedForm(
                "values incompatible with generator orders".into(),
            ));
        }
        let degenerate = self
            .elements()
            .any(|x| x != (0, 0) && self.b(x, (1, 0)) == 0 && self.b(x, (0, 1)) == 0);
        if degenerate {
            return Err(Error::MalformedForm("bilinear form is degenerate".into()));
        }
        Ok(())
    }

    /// The trivial form on the zero group.
    pub fn trivial() -> Self {
        FiniteQuadraticForm { d1: 1, d2: 1, den: 2, q11: 0, q22: 0, b12: 0 }
    }

    pub fn d1(&self) -> i64 {
        self.d1
    }

    pub fn d2(&self) -> i64 {
        self.d2
    }

    pub fn order(&self) -> u64 {
        (self.d1 * self.d2) as u64
    }

    /// `q(g1)` in `[0, 2)`.
    pub fn q11(&self) -> Ratio<i64> {
        Ratio::new(self.q11, self.den)
    }

    /// `q(g2)` in `[0, 2)`.
    pub fn q22(&self) -> Ratio<i64> {
        Ratio::new(self.q22, self.den)
    }

    /// `b(g1, g2)` in `[0, 1)`.
    pub fn b12(&self) -> Ratio<i64> {
        Ratio::new(self.b12, self.den)
    }

    pub fn normalize(&self, x: (i64, i64)) -> Elem {
        (x.0.rem_euclid(self.d1), x.1.rem_euclid(self.d2))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.d1).flat_map(move |x| (0..self.d2).map(move |y| (x, y)))
    }

    /// Numerator of `q(x)` over `2·d2`, reduced mod `4·d2`.
    pub fn q(&self, x: Elem) -> i64 {
        let (u, v) = (x.0 as i128, x.1 as i128);
        let n = u * u * self.q11 as i128
            + v * v * self.q22 as i128
            + 2 * u * v * self.b12 as i128;
        n.rem_euclid(2 * self.den as i128) as i64
    }

    /// Numerator of `b(x, y)` over `2·d2`, reduced mod `2·d2`.
    pub fn b(&self, x: Elem, y: Elem) -> i64 {
        let (u, v) = (x.0 as i128, x.1 as i128);
        let (s, t) = (y.0 as i128, y.1 as i128);
        let n = u * s * self.q11 as i128
            + v * t * self.q22 as i128
            + (u * t + v * s) * self.b12 as i128;
        n.rem_euclid(self.den as i128) as i64
    }

    /// `q(x)` as a rational in `[0, 2)`.
    pub fn q_value(&self, x: Elem) -> Ratio<i64> {
        Ratio::new(self.q(x), self.den)
    }

    fn add(&self, x: Elem, y: Elem) -> Elem {
        self.normalize((x.0 + y.0, x.1 + y.1))
    }

    fn scalar(&self, k: i64, x: Elem) -> Elem {
        let k1 = k.rem_euclid(self.d1) as i128;
        let k2 = k.rem_euclid(self.d2) as i128;
        (
            (k1 * x.0 as i128 % self.d1 as i128) as i64,
            (k2 * x.1 as i128 % self.d2 as i128) as i64,
        )
    }
}

impl fmt::Display for FiniteQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Z/{} + Z/{} with q = ({}, {}), b = {}",
            self.d1,
            self.d2,
            self.q11(),
            self.q22(),
            self.b12()
        )
    }
}

/// A homomorphism between finite forms, given by the images of `g1`, `g2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FormMap {
    pub images: [Elem; 2],
}

impl FormMap {
    pub fn identity() -> Self {
        FormMap { images: [(1, 0), (0, 1)] }
    }

    /// Applies the map; `target` is the codomain.
    pub fn apply(&self, x: Elem, target: &FiniteQuadraticForm) -> Elem {
        let a = target.scalar(x.0, self.images[0]);
        let b = target.scalar(x.1, self.images[1]);
        target.add(a, b)
    }

    /// `self ∘ other`, where `other` maps into the domain of `self`.
    pub fn compose(&self, other: &FormMap, target: &FiniteQuadraticForm) -> FormMap {
        FormMap {
            images: [
                self.apply(other.images[0], target),
                self.apply(other.images[1], target),
            ],
        }
    }

    /// Multiplies the map by an integer scalar.
    pub fn scaled(&self, k: i64, target: &FiniteQuadraticForm) -> FormMap {
        FormMap {
            images: [target.scalar(k, self.images[0]), target.scalar(k, self.images[1])],
        }
    }

    /// Inverse of an isomorphism `source -> target`, by tabulating images.
    pub fn inverse(&self, source: &FiniteQuadraticForm, target: &FiniteQuadraticForm) -> FormMap {
        let table: HashMap<Elem, Elem> = source
            .elements()
            .map(|x| (self.apply(x, target), x))
            .collect();
        FormMap { images: [table[&(1 % target.d1, 0)], table[&(0, 1 % target.d2)]] }
    }

    /// Determinant of the matrix of images modulo `d2`; meaningful when
    /// `d1 = d2`.
    pub fn det_mod(&self, form: &FiniteQuadraticForm) -> i64 {
        let [(a, c), (b, d)] = self.images;
        ((a as i128 * d as i128 - b as i128 * c as i128).rem_euclid(form.d2 as i128)) as i64
    }
}

/// Fails when `size` is over the brute-force limit.
pub fn check_guard(size: u64, guard: u64) -> Result<()> {
    if size > guard {
        Err(Error::GuardExceeded { required: size, limit: guard })
    } else {
        Ok(())
    }
}

/// All isometries `source -> target`, by exhaustive search over generator
/// images. `limit` stops early once that many have been found.
pub fn isometries(
    source: &FiniteQuadraticForm,
    target: &FiniteQuadraticForm,
    guard: u64,
    limit: Option<usize>,
) -> Result<Vec<FormMap>> {
    check_guard(source.order().max(target.order()), guard)?;
    if (source.d1, source.d2) != (target.d1, target.d2) {
        return Ok(Vec::new());
    }
    // same d2, so numerators share the denominator 2·d2
    let d1 = source.d1;
    let firsts: Vec<Elem> = target
        .elements()
        .filter(|&x| target.scalar(d1, x) == (0, 0) && target.q(x) == source.q11)
        .collect();
    let seconds: Vec<Elem> = target
        .elements()
        .filter(|&y| target.q(y) == source.q22)
        .collect();
    let mut out = Vec::new();
    for &x in &firsts {
        for &y in &seconds {
            if target.b(x, y) == source.b12 {
                // q-preserving with non-degenerate b forces injectivity, and
                // the groups have equal order
                out.push(FormMap { images: [x, y] });
                if limit.is_some_and(|n| out.len() >= n) {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// The group `O(D)` as a list of maps.
pub fn automorphism_group(form: &FiniteQuadraticForm, guard: u64) -> Result<Vec<FormMap>> {
    isometries(form, form, guard, None)
}

/// `|O(D)|` by exhaustive search.
pub fn brute_force_order(form: &FiniteQuadraticForm, guard: u64) -> Result<u64> {
    Ok(automorphism_group(form, guard)?.len() as u64)
}

/// Whether two finite forms are isometric.
pub fn forms_isometric(
    d1: &FiniteQuadraticForm,
    d2: &FiniteQuadraticForm,
    guard: u64,
) -> Result<bool> {
    Ok(!isometries(d1, d2, guard, Some(1))?.is_empty())
}

/// Generators of `L^∨/L` in lattice coordinates: column `i` of `right`
/// divided by `d_i`.
#[derive(Debug, Clone, Copy)]
struct DualBasis {
    d: [i64; 2],
    right: Mat2,
    right_inv: Mat2,
}

fn dual_basis(lattice: &EvenBinaryLattice) -> Result<DualBasis> {
    let snf = snf_2x2(&lattice.gram())?;
    Ok(DualBasis {
        d: [snf.d1, snf.d2],
        right: snf.right,
        right_inv: snf.right.unimodular_inverse().expect("snf transforms are unimodular"),
    })
}

/// The discriminant form `(L^∨/L, q_L)`.
pub fn disc_form_of(lattice: &EvenBinaryLattice) -> Result<FiniteQuadraticForm> {
    let basis = dual_basis(lattice)?;
    let g = lattice.gram();
    let r = basis.right;
    let [d1, d2] = basis.d;
    let den = 2 * d2 as i128;
    let pair = |i: usize, j: usize| -> i128 {
        let u = r.column(i);
        let v = r.column(j);
        let gv = [
            g.get(0, 0) as i128 * v[0] as i128 + g.get(0, 1) as i128 * v[1] as i128,
            g.get(1, 0) as i128 * v[0] as i128 + g.get(1, 1) as i128 * v[1] as i128,
        ];
        u[0] as i128 * gv[0] + u[1] as i128 * gv[1]
    };
    // (r_i/d_i, r_j/d_j) as a numerator over 2·d2
    let over = |num: i128, di: i64, dj: i64| -> Result<i64> {
        let scaled = num * den;
        let q = (di as i128) * (dj as i128);
        if scaled % q != 0 {
            return Err(Error::Inconsistent("dual basis pairing not in (1/2d2)Z".into()));
        }
        i64::try_from(scaled / q).map_err(|_| Error::Overflow("discriminant form"))
    };
    let den = den as i64;
    let form = FiniteQuadraticForm {
        d1,
        d2,
        den,
        q11: over(pair(0, 0), d1, d1)?.rem_euclid(2 * den),
        q22: over(pair(1, 1), d2, d2)?.rem_euclid(2 * den),
        b12: over(pair(0, 1), d1, d2)?.rem_euclid(den),
    };
    debug_assert!(form.validate().is_ok());
    Ok(form)
}

/// The action of a lattice isometry on `D_L`.
pub fn induced_map(lattice: &EvenBinaryLattice, g: &Isometry2) -> Result<FormMap> {
    let basis = dual_basis(lattice)?;
    let m = basis.right_inv.mul(g.matrix()).mul(&basis.right);
    let [d1, d2] = basis.d;
    let coeff = |j: usize, i: usize| -> Result<i64> {
        // coefficient on g_j of the image of g_i: d_j · m[j][i] / d_i
        let num = basis.d[j] as i128 * m.get(j, i) as i128;
        let di = basis.d[i] as i128;
        if num % di != 0 {
            return Err(Error::Inconsistent("isometry does not preserve the dual".into()));
        }
        Ok((num / di) as i64)
    };
    let img = |i: usize| -> Result<Elem> {
        Ok((coeff(0, i)?.rem_euclid(d1), coeff(1, i)?.rem_euclid(d2)))
    };
    Ok(FormMap { images: [img(0)?, img(1)?] })
}

/// Classification type of a `p`-component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    /// Diagonalizable: the `A` (equal orders) or `B` (unequal orders) forms.
    Diag,
    /// 2-adic even block, hyperbolic type.
    Even2U,
    /// 2-adic even block, the `(2 1; 1 2)` type.
    Even2V,
    /// Zero 2-component.
    Trivial,
}

/// The `p`-component `Z/p^k ⊕ Z/p^l` (`k <= l`) of a discriminant form.
///
/// `eps` is `-det / p^(2k)` when the two orders agree and zero otherwise;
/// it fixes the isometry class together with the orders and the kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocalSymbol {
    pub p: u64,
    pub k: u32,
    pub l: u32,
    pub kind: SymbolKind,
    pub eps: i64,
}

impl LocalSymbol {
    /// Part of the symbol that is fixed by the group structure and 2-adic
    /// type alone (used to pre-filter genus searches).
    pub fn fingerprint(&self) -> (u64, u32, u32, SymbolKind) {
        (self.p, self.k, self.l, self.kind)
    }
}

fn valuation(mut n: i64, p: i64) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

fn eps_for(det: i64, p: u64, k: u32) -> i64 {
    -det / (p as i64).pow(2 * k)
}

/// The 2-component of `D_L`, including the trivial case.
pub fn two_adic_symbol(lattice: &EvenBinaryLattice) -> Result<LocalSymbol> {
    let det = lattice.det();
    let snf = snf_2x2(&lattice.gram())?;
    let (k, l) = (valuation(snf.d1, 2), valuation(snf.d2, 2));
    let vb = valuation(lattice.b(), 2);
    let vdiag = valuation(2 * lattice.a(), 2).min(valuation(2 * lattice.c(), 2));
    if vb < vdiag {
        if k != l {
            return Err(Error::Inconsistent(format!("{lattice}: even 2-block with k != l")));
        }
        if k == 0 {
            return Ok(LocalSymbol { p: 2, k: 0, l: 0, kind: SymbolKind::Trivial, eps: 0 });
        }
        let eps = eps_for(det, 2, k);
        let kind = match eps.rem_euclid(8) {
            1 => SymbolKind::Even2U,
            5 => SymbolKind::Even2V,
            r => {
                return Err(Error::Inconsistent(format!(
                    "{lattice}: even 2-block with eps = {r} mod 8"
                )))
            }
        };
        return Ok(LocalSymbol { p: 2, k, l, kind, eps });
    }
    if l == 0 {
        return Ok(LocalSymbol { p: 2, k: 0, l: 0, kind: SymbolKind::Trivial, eps: 0 });
    }
    let eps = if k == l { eps_for(det, 2, k) } else { 0 };
    Ok(LocalSymbol { p: 2, k, l, kind: SymbolKind::Diag, eps })
}

/// One local symbol for every prime dividing `det L`, ascending in `p`.
pub fn local_symbols(lattice: &EvenBinaryLattice) -> Result<Vec<LocalSymbol>> {
    let det = lattice.det();
    let snf = snf_2x2(&lattice.gram())?;
    let mut out = Vec::new();
    for p in factorize(det as u64).primes() {
        if p == 2 {
            out.push(two_adic_symbol(lattice)?);
            continue;
        }
        let k = valuation(snf.d1, p as i64);
        let l = valuation(snf.d2, p as i64);
        let eps = if k == l { eps_for(det, p, k) } else { 0 };
        out.push(LocalSymbol { p, k, l, kind: SymbolKind::Diag, eps });
    }
    Ok(out)
}

/// `|O(D_p)|` for one local symbol.
pub fn local_order(s: &LocalSymbol) -> Result<u64> {
    let malformed = |why: &str| Err(Error::MalformedSymbol(format!("{s:?}: {why}")));
    if s.k > s.l {
        return malformed("k > l");
    }
    let p = s.p;
    let pk = |e: u32| p.checked_pow(e).ok_or(Error::Overflow("local order"));
    match s.kind {
        SymbolKind::Trivial => {
            if s.k != 0 || s.l != 0 || p != 2 {
                return malformed("trivial symbol with non-zero exponents");
            }
            Ok(1)
        }
        SymbolKind::Even2U | SymbolKind::Even2V => {
            if p != 2 || s.k != s.l || s.k == 0 {
                return malformed("even 2-block needs p = 2 and k = l >= 1");
            }
            let expected = if s.kind == SymbolKind::Even2U { 1 } else { 5 };
            if s.eps.rem_euclid(8) != expected {
                return malformed("eps does not match U/V type");
            }
            let base = pk(s.k)?;
            Ok(if s.kind == SymbolKind::Even2U { base } else { 3 * base })
        }
        SymbolKind::Diag if p != 2 => {
            if s.l == 0 {
                return malformed("empty p-component");
            }
            if s.k == s.l {
                let c = chi(p as i64, s.eps)?;
                if c == 0 {
                    return malformed("eps is not a p-adic unit");
                }
                Ok(2 * pk(s.k - 1)? * (p as i64 - c as i64) as u64)
            } else if s.k == 0 {
                // cyclic: O = {±1}
                Ok(2)
            } else {
                Ok(4 * pk(s.k)?)
            }
        }
        SymbolKind::Diag => {
            if s.k == 0 {
                return malformed("cyclic 2-component");
            }
            if s.k == s.l {
                if s.eps % 2 == 0 {
                    return malformed("eps is not a 2-adic unit");
                }
                let minus_one = s.eps.rem_euclid(4) == 3;
                Ok(match (s.k, minus_one) {
                    (1, false) => 1,
                    (1, true) => 2,
                    (k, false) => pk(k)?,
                    (k, true) => pk(k + 1)?,
                })
            } else {
                let wide = s.l - s.k >= 3;
                Ok(match (s.k, wide) {
                    (1, false) => 2,
                    (1, true) => 4,
                    (k, false) => pk(k + 1)?,
                    (k, true) => pk(k + 2)?,
                })
            }
        }
    }
}

/// `|O(D_L)|` from the closed formula in the invariant factors `(n, m)`.
pub fn global_order(lattice: &EvenBinaryLattice) -> Result<u64> {
    let det = lattice.det();
    let snf = snf_2x2(&lattice.gram())?;
    let (n, m) = (snf.d1 as u64, snf.d2 as u64);
    let two = two_adic_symbol(lattice)?;

    let eps = |p: u64| -> i64 {
        let e = factorize(n).exponent(p);
        if e == factorize(m).exponent(p) {
            eps_for(det, p, e)
        } else {
            0
        }
    };

    // (exponent of 2, primes in the product, halve?)
    let (exp, include_two, halve) = match two.kind {
        SymbolKind::Trivial | SymbolKind::Even2U | SymbolKind::Even2V => {
            (tau_tilde(n) + tau_tilde(m / n), true, false)
        }
        SymbolKind::Diag => {
            let halve = if two.k == two.l {
                two.eps.rem_euclid(4) == 1
            } else {
                two.l - two.k <= 2
            };
            (tau_tilde(n / 2) + tau_tilde(m / n), false, halve)
        }
    };

    let mut num: u128 = (1u128 << exp) * n as u128;
    let mut den: u128 = if halve { 2 } else { 1 };
    for p in factorize(n).primes() {
        if p == 2 && !include_two {
            continue;
        }
        let c = chi(p as i64, eps(p))? as i128;
        num *= (p as i128 - c) as u128;
        den *= p as u128;
    }
    if !num.is_multiple_of(den) {
        return Err(Error::Inconsistent(format!(
            "{lattice}: order formula gives non-integer {num}/{den}"
        )));
    }
    u64::try_from(num / den).map_err(|_| Error::Overflow("global order"))
}

/// `|O(D_{L(n)})|`.
pub fn scaled_order(lattice: &EvenBinaryLattice, n: i64) -> Result<u64> {
    global_order(&lattice.scale(n)?)
}

/// `|O(D_{L(n)})|` predicted from `|O(D_L)|` when `n` is coprime to
/// `det L`, or when `L` is primitive and every prime of `n` divides
/// `det L`. `None` outside those two regimes.
pub fn scaled_order_closed_form(lattice: &EvenBinaryLattice, n: i64) -> Result<Option<u64>> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("scale factor {n} < 1")));
    }
    let base = global_order(lattice)? as u128;
    if n == 1 {
        return Ok(Some(base as u64));
    }
    let det = lattice.det();
    let fac = factorize(n as u64);
    let lead = base * (1u128 << tau(n as u64)) * n as u128;
    let value = if gcd(n, det) == 1 {
        let mut num = lead;
        let mut den = 1u128;
        for p in fac.primes() {
            let c = chi(p as i64, -det)? as i128;
            num *= (p as i128 - c) as u128;
            den *= p as u128;
        }
        if !num.is_multiple_of(den) {
            return Err(Error::Inconsistent("scaled order not integral".into()));
        }
        num / den
    } else if lattice.is_primitive() && fac.primes().all(|p| det % p as i64 == 0) {
        lead
    } else {
        return Ok(None);
    };
    Ok(Some(u64::try_from(value).map_err(|_| Error::Overflow("scaled order"))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qform::{enumerate_reduced, isometry_group};

    fn l(a: i64, b: i64, c: i64) -> EvenBinaryLattice {
        EvenBinaryLattice::new(a, b, c).unwrap()
    }

    fn r(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn disc_form_examples() {
        let d = disc_form_of(&l(1, 1, 4)).unwrap();
        assert_eq!((d.d1(), d.d2(), d.order()), (1, 15, 15));
        // cyclic generator with q = 2k/15, k a unit mod 15
        let k = d.q22() * 15 / 2;
        assert!(k.is_integer() && gcd(*k.numer(), 15) == 1);

        let d = disc_form_of(&l(1, 0, 1)).unwrap();
        assert_eq!((d.d1(), d.d2()), (2, 2));
        assert_eq!((d.q11(), d.q22(), d.b12()), (r(1, 2), r(1, 2), r(0, 1)));

        let d = disc_form_of(&l(2, 2, 2)).unwrap();
        assert_eq!((d.d1(), d.d2()), (2, 6));
    }

    #[test]
    fn new_rejects_bad_forms() {
        // q(g) = 1/3 on Z/2 is not well defined
        assert!(FiniteQuadraticForm::new(1, 2, r(0, 1), r(1, 3), r(0, 1)).is_err());
        // zero form on Z/2 is degenerate
        assert!(FiniteQuadraticForm::new(1, 2, r(0, 1), r(0, 1), r(0, 1)).is_err());
        // d1 must divide d2
        assert!(FiniteQuadraticForm::new(2, 3, r(0, 1), r(0, 1), r(0, 1)).is_err());
        assert!(FiniteQuadraticForm::new(1, 2, r(0, 1), r(1, 2), r(0, 1)).is_ok());
    }

    #[test]
    fn brute_force_examples() {
        let d = disc_form_of(&l(1, 0, 1)).unwrap();
        assert_eq!(brute_force_order(&d, DEFAULT_GUARD), Ok(2));
        let d = disc_form_of(&l(1, 1, 4)).unwrap();
        assert_eq!(brute_force_order(&d, DEFAULT_GUARD), Ok(4));
        assert_eq!(brute_force_order(&FiniteQuadraticForm::trivial(), DEFAULT_GUARD), Ok(1));
        let big = disc_form_of(&l(40, 0, 40)).unwrap();
        assert_eq!(
            brute_force_order(&big, DEFAULT_GUARD),
            Err(Error::GuardExceeded { required: 6400, limit: 4096 })
        );
    }

    #[test]
    fn isometric_examples() {
        let g = DEFAULT_GUARD;
        let d = |a, b, c| disc_form_of(&l(a, b, c)).unwrap();
        assert!(!forms_isometric(&d(1, 1, 4), &d(2, 1, 2), g).unwrap());
        assert!(forms_isometric(&d(3, 1, 5), &d(3, 1, 5), g).unwrap());
        assert!(!forms_isometric(&d(1, 0, 3), &d(2, 2, 2), g).unwrap());
        // opposite orientations are isometric lattices
        assert!(forms_isometric(&d(2, 1, 3), &d(2, -1, 3), g).unwrap());
    }

    #[test]
    fn isometric_is_an_equivalence_on_a_sample() {
        let forms: Vec<FiniteQuadraticForm> = (40..=60)
            .flat_map(|det| enumerate_reduced(det, false))
            .map(|f| disc_form_of(&f).unwrap())
            .collect();
        let rel = |a: &FiniteQuadraticForm, b: &FiniteQuadraticForm| {
            forms_isometric(a, b, DEFAULT_GUARD).unwrap()
        };
        for x in &forms {
            assert!(rel(x, x));
            for y in &forms {
                assert_eq!(rel(x, y), rel(y, x));
                if !rel(x, y) {
                    continue;
                }
                for z in &forms {
                    if rel(y, z) {
                        assert!(rel(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn local_symbol_examples() {
        let s = local_symbols(&l(2, 2, 2)).unwrap();
        assert_eq!(
            s,
            vec![
                LocalSymbol { p: 2, k: 1, l: 1, kind: SymbolKind::Even2V, eps: -3 },
                LocalSymbol { p: 3, k: 0, l: 1, kind: SymbolKind::Diag, eps: 0 },
            ]
        );
        let s = local_symbols(&l(2, 0, 2)).unwrap();
        assert_eq!(s, vec![LocalSymbol { p: 2, k: 2, l: 2, kind: SymbolKind::Diag, eps: -1 }]);
        let s = local_symbols(&l(1, 0, 3)).unwrap();
        assert_eq!(s[0].fingerprint(), (2, 1, 1, SymbolKind::Diag));
        assert_eq!(s[1].fingerprint(), (3, 0, 1, SymbolKind::Diag));
        assert_eq!(two_adic_symbol(&l(1, 1, 1)).unwrap().kind, SymbolKind::Trivial);
        assert!(local_symbols(&l(1, 1, 1)).unwrap().iter().all(|s| s.p == 3));
    }

    #[test]
    fn local_order_examples() {
        let v1 = LocalSymbol { p: 2, k: 1, l: 1, kind: SymbolKind::Even2V, eps: 5 };
        assert_eq!(local_order(&v1), Ok(6));
        let a22 = LocalSymbol { p: 2, k: 2, l: 2, kind: SymbolKind::Diag, eps: -1 };
        assert_eq!(local_order(&a22), Ok(8));
        // chi_5(2) = -1
        let a51 = LocalSymbol { p: 5, k: 1, l: 1, kind: SymbolKind::Diag, eps: 2 };
        assert_eq!(local_order(&a51), Ok(12));
        let u1 = LocalSymbol { p: 2, k: 1, l: 1, kind: SymbolKind::Even2U, eps: 1 };
        assert_eq!(local_order(&u1), Ok(2));
    }

    #[test]
    fn local_order_rejects_malformed() {
        let bad = [
            LocalSymbol { p: 3, k: 1, l: 1, kind: SymbolKind::Even2U, eps: 1 },
            LocalSymbol { p: 2, k: 1, l: 2, kind: SymbolKind::Even2V, eps: 5 },
            LocalSymbol { p: 2, k: 1, l: 1, kind: SymbolKind::Even2V, eps: 1 },
            LocalSymbol { p: 2, k: 0, l: 3, kind: SymbolKind::Diag, eps: 0 },
            LocalSymbol { p: 5, k: 2, l: 1, kind: SymbolKind::Diag, eps: 0 },
            LocalSymbol { p: 5, k: 1, l: 1, kind: SymbolKind::Diag, eps: 10 },
        ];
        for s in bad {
            assert!(matches!(local_order(&s), Err(Error::MalformedSymbol(_))), "{s:?}");
        }
    }

    #[test]
    fn global_order_examples() {
        assert_eq!(global_order(&l(1, 1, 4)), Ok(4));
        assert_eq!(global_order(&l(2, 2, 2)), Ok(12));
        assert_eq!(global_order(&l(3, 3, 3)), Ok(12));
        assert_eq!(global_order(&l(2, 0, 2)), Ok(8));
        assert_eq!(global_order(&l(1, 0, 1)), Ok(2));
    }

    #[test]
    fn scaled_order_examples() {
        assert_eq!(scaled_order(&l(1, 1, 1), 2), Ok(12));
        assert_eq!(scaled_order_closed_form(&l(1, 1, 1), 2), Ok(Some(12)));
        let base = global_order(&l(1, 1, 2)).unwrap();
        assert_eq!(scaled_order(&l(1, 1, 2), 7), Ok(base * 2 * 7));
        assert_eq!(scaled_order_closed_form(&l(1, 1, 2), 7), Ok(Some(base * 14)));
        assert_eq!(scaled_order(&l(1, 0, 1), 1), Ok(2));
        // mixed regime: 2 divides det 8 but 3 does not
        assert_eq!(scaled_order_closed_form(&l(1, 0, 2), 6), Ok(None));
    }

    #[test]
    fn induced_map_is_isometry() {
        for det in 3..=80 {
            for f in enumerate_reduced(det, false) {
                let d = disc_form_of(&f).unwrap();
                for g in isometry_group(&f) {
                    let m = induced_map(&f, &g).unwrap();
                    for x in d.elements() {
                        assert_eq!(d.q(m.apply(x, &d)), d.q(x), "{f} {g:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn two_part_never_cyclic() {
        for det in 3..=500 {
            for f in enumerate_reduced(det, false) {
                let s = two_adic_symbol(&f).unwrap();
                assert!(s.kind == SymbolKind::Trivial || s.k >= 1, "{f}: {s:?}");
            }
        }
    }
}
