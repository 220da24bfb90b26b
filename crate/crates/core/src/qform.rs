//! Positive-definite even lattices of rank 2.
//!
//! A lattice is stored as the integral binary form `a x² + b xy + c y²`;
//! its Gram matrix is `(2a b; b 2c)` and its determinant `4ac - b²`. The
//! determinant is the negated discriminant of the binary form.
//!
//! Reduction uses the classical convention `|b| <= a <= c` with `b >= 0`
//! whenever `|b| = a` or `a = c`. Each proper equivalence class contains
//! exactly one reduced form.

use std::fmt;

use crate::arith::{gcd, Mat2};
use crate::error::{Error, Result};

/// A positive-definite even lattice of rank 2, Gram matrix `(2a b; b 2c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvenBinaryLattice {
    a: i64,
    b: i64,
    c: i64,
}

impl EvenBinaryLattice {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let det = 4i128 * a as i128 * c as i128 - (b as i128) * (b as i128);
        if a <= 0 || det <= 0 {
            return Err(Error::NotPositiveDefinite { a, b, c });
        }
        if det > i64::MAX as i128 / 4 {
            return Err(Error::Overflow("lattice determinant"));
        }
        Ok(EvenBinaryLattice { a, b, c })
    }

    /// The square lattice `(n, 0, n)`, Gram `diag(2n, 2n)`.
    pub fn square(n: i64) -> Result<Self> {
        Self::new(n, 0, n)
    }

    /// The hexagonal lattice `(n, n, n)`, Gram `(2n n; n 2n)`.
    pub fn hexagonal(n: i64) -> Result<Self> {
        Self::new(n, n, n)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn triple(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    pub fn gram(&self) -> Mat2 {
        Mat2::new(2 * self.a, self.b, self.b, 2 * self.c)
    }

    pub fn det(&self) -> i64 {
        4 * self.a * self.c - self.b * self.b
    }

    /// `gcd(a, b, c)`; the lattice is primitive iff this is 1.
    pub fn content(&self) -> i64 {
        gcd(gcd(self.a, self.b), self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// The lattice with its bilinear form multiplied by `n`.
    pub fn scale(&self, n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument(format!("scale factor {n} < 1")));
        }
        let m = |x: i64| x.checked_mul(n).ok_or(Error::Overflow("scale"));
        Self::new(m(self.a)?, m(self.b)?, m(self.c)?)
    }

    /// The same lattice with the opposite orientation.
    pub fn mirror(&self) -> Self {
        EvenBinaryLattice { a: self.a, b: -self.b, c: self.c }
    }

    /// `(v, w)` in the lattice basis.
    pub fn pairing(&self, v: [i64; 2], w: [i64; 2]) -> i64 {
        2 * self.a * v[0] * w[0] + self.b * (v[0] * w[1] + v[1] * w[0]) + 2 * self.c * v[1] * w[1]
    }

    /// `(v, v)`.
    pub fn norm(&self, v: [i64; 2]) -> i64 {
        self.pairing(v, v)
    }

    /// Whether the triple satisfies the reduction conditions.
    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = self.triple();
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// `Uᵀ · Gram · U` for an integer matrix `U`.
    pub fn transform(&self, u: &Mat2) -> Result<Self> {
        let g = u.transpose().checked_mul(&self.gram())?.checked_mul(u)?;
        Self::new(g.get(0, 0) / 2, g.get(0, 1), g.get(1, 1) / 2)
    }

    /// `true` for `(n, 0, n)` or `(n, n, n)` after reduction; returns `n`.
    pub fn exceptional_shape(&self) -> Option<(ExceptionalShape, i64)> {
        let r = reduce(self).form;
        match r.triple() {
            (a, 0, c) if a == c => Some((ExceptionalShape::Square, a)),
            (a, b, c) if a == b && b == c => Some((ExceptionalShape::Hexagonal, a)),
            _ => None,
        }
    }
}

impl fmt::Display for EvenBinaryLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// The two lattice shapes with extra rotations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExceptionalShape {
    /// `(n, 0, n)`: rotation group of order 4.
    Square,
    /// `(n, n, n)`: rotation group of order 6.
    Hexagonal,
}

/// An integral isometry `g` of a lattice: `gᵀ · Gram · g = Gram`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Isometry2(pub Mat2);

impl Isometry2 {
    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn det(&self) -> i64 {
        self.0.det()
    }

    pub fn is_rotation(&self) -> bool {
        self.det() == 1
    }

    pub fn compose(&self, other: &Isometry2) -> Isometry2 {
        Isometry2(self.0.mul(&other.0))
    }

    pub fn inverse(&self) -> Isometry2 {
        Isometry2(self.0.unimodular_inverse().expect("isometries are unimodular"))
    }

    pub fn preserves(&self, lattice: &EvenBinaryLattice) -> bool {
        let g = &self.0;
        let lhs = g.transpose().mul(&lattice.gram()).mul(g);
        lhs == lattice.gram()
    }
}

/// Result of [`reduce`]: `transformᵀ · Gram(input) · transform = Gram(form)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reduction {
    pub form: EvenBinaryLattice,
    pub transform: Mat2,
}

/// Gauss reduction by determinant-one changes of basis.
pub fn reduce(lattice: &EvenBinaryLattice) -> Reduction {
    let (mut a, mut b, mut c) = (
        lattice.a as i128,
        lattice.b as i128,
        lattice.c as i128,
    );
    let mut u = [[1i128, 0], [0, 1]];
    loop {
        // translate b into (-a, a]
        let k = (a - b).div_euclid(2 * a);
        if k != 0 {
            c += a * k * k + b * k;
            b += 2 * a * k;
            for row in u.iter_mut() {
                row[1] += k * row[0];
            }
        }
        if a > c || (a == c && b < 0) {
            (a, b, c) = (c, -b, a);
            // U <- U · (0 -1; 1 0)
            for row in u.iter_mut() {
                (row[0], row[1]) = (row[1], -row[0]);
            }
            continue;
        }
        break;
    }
    let n = |x: i128| x as i64;
    Reduction {
        form: EvenBinaryLattice { a: n(a), b: n(b), c: n(c) },
        transform: Mat2::new(n(u[0][0]), n(u[0][1]), n(u[1][0]), n(u[1][1])),
    }
}

/// Whether a determinant-one change of basis carries `l` to `m`.
pub fn properly_equivalent(l: &EvenBinaryLattice, m: &EvenBinaryLattice) -> bool {
    reduce(l).form == reduce(m).form
}

fn isqrt(n: i128) -> i128 {
    if n <= 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// All vectors `v` with `(v, v) = target`.
pub fn vectors_of_norm(lattice: &EvenBinaryLattice, target: i64) -> Vec<[i64; 2]> {
    let (a, b, c) = (lattice.a as i128, lattice.b as i128, lattice.c as i128);
    let det = lattice.det() as i128;
    let t = target as i128;
    // (v, v) = 2a (x + b y / 2a)² + (det / 2a) y², so y² <= 2a t / det
    let y_max = isqrt(2 * a * t / det) + 1;
    let x_max = isqrt(2 * c * t / det) + 1;
    let mut out = Vec::new();
    for y in -y_max..=y_max {
        for x in -x_max..=x_max {
            if 2 * a * x * x + 2 * b * x * y + 2 * c * y * y == t {
                out.push([x as i64, y as i64]);
            }
        }
    }
    out
}

/// The full isometry group `O(L)`, found from short vectors of the reduced
/// form and conjugated back to the input basis.
pub fn isometry_group(lattice: &EvenBinaryLattice) -> Vec<Isometry2> {
    let red = reduce(lattice);
    let r = red.form;
    let firsts = vectors_of_norm(&r, 2 * r.a);
    let seconds = vectors_of_norm(&r, 2 * r.c);
    let u = red.transform;
    let u_inv = u.unimodular_inverse().expect("reduction is unimodular");
    let mut group = Vec::new();
    for v in &firsts {
        for w in &seconds {
            if r.pairing(*v, *w) != r.b {
                continue;
            }
            let g = Mat2::new(v[0], w[0], v[1], w[1]);
            if g.det().abs() != 1 {
                continue;
            }
            // g preserves Gram(R) = Uᵀ G U, so U g U⁻¹ preserves G
            group.push(Isometry2(u.mul(&g).mul(&u_inv)));
        }
    }
    group.sort_by_key(|g| g.0 .0);
    group
}

/// The rotation subgroup `SO(L)`.
pub fn rotation_group(lattice: &EvenBinaryLattice) -> Vec<Isometry2> {
    isometry_group(lattice)
        .into_iter()
        .filter(Isometry2::is_rotation)
        .collect()
}

/// `O(L) != SO(L)`.
pub fn is_ambiguous(lattice: &EvenBinaryLattice) -> bool {
    isometry_group(lattice).iter().any(|g| g.det() == -1)
}

/// The reduced-form criterion for ambiguity: `b = 0`, `a = b` or `a = c`.
pub fn reduced_form_is_ambiguous(lattice: &EvenBinaryLattice) -> bool {
    let (a, b, c) = reduce(lattice).form.triple();
    b == 0 || a == b || a == c
}

/// All reduced lattices of the given determinant, sorted by `(a, b, c)`.
pub fn enumerate_reduced(det: i64, primitive_only: bool) -> Vec<EvenBinaryLattice> {
    let mut out = Vec::new();
    if det < 3 {
        return out;
    }
    let mut a = 1i64;
    // reduced forms satisfy det = 4ac - b² >= 3a²
    while 3 * a * a <= det {
        for b in (-a + 1)..=a {
            let num = det + b * b;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && a == c) {
                continue;
            }
            let form = EvenBinaryLattice { a, b, c };
            if !primitive_only || form.is_primitive() {
                out.push(form);
            }
        }
        a += 1;
    }
    out.sort();
    out
}

/// One representative per isometry class (reduced forms with `b >= 0`).
pub fn enumerate_isometry_classes(det: i64, primitive_only: bool) -> Vec<EvenBinaryLattice> {
    enumerate_reduced(det, primitive_only)
        .into_iter()
        .filter(|f| f.b >= 0)
        .collect()
}

/// Class number of primitive positive forms of a negative discriminant.
pub fn class_number(discriminant: i64) -> Result<u64> {
    if discriminant >= 0 || !matches!(discriminant.rem_euclid(4), 0 | 1) {
        return Err(Error::InvalidArgument(format!(
            "{discriminant} is not a negative discriminant"
        )));
    }
    Ok(enumerate_reduced(-discriminant, true).len() as u64)
}

/// `L(n)`.
pub fn scale(lattice: &EvenBinaryLattice, n: i64) -> Result<EvenBinaryLattice> {
    lattice.scale(n)
}
