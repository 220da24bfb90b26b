//! Integer number theory shared by the lattice modules: factorization,
//! prime counting functions, quadratic characters, Bezout pairs and the
//! Smith normal form of 2×2 integer matrices.
//!
//! Everything works on `i64`/`u64` with checked arithmetic; an overflow is
//! reported as [`Error::Overflow`] rather than wrapping.

use std::fmt;

use crate::error::{Error, Result};

/// Prime factorization as `(p, e)` pairs sorted by `p`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Exponent of `p`, zero when `p` does not divide.
    pub fn exponent(&self, p: u64) -> u32 {
        self.0
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Multiplies the factors back together.
    pub fn product(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Brent's variant of Pollard rho; `n` must be odd and composite.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Factors `n >= 1`; `factorize(1)` is empty.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut primes = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p < 1000 && p * p <= rest {
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    split_into(rest, &mut primes);
    primes.sort_unstable();
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match pairs.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => pairs.push((q, 1)),
        }
    }
    Factorization(pairs)
}

/// Number of distinct prime divisors, with the convention `tau(1) = 1`.
pub fn tau(n: u64) -> u32 {
    if n == 1 {
        1
    } else {
        factorize(n).len() as u32
    }
}

/// Number of distinct prime divisors, with `tau_tilde(1) = 0`.
pub fn tau_tilde(n: u64) -> u32 {
    if n == 1 {
        0
    } else {
        tau(n)
    }
}

/// Quadratic character at `p`.
///
/// For odd `p` this is the Legendre symbol (zero when `p | a`). For `p = 2`
/// it is defined only on `a ≡ 0, 1 mod 4`: `+1` for `a ≡ 1 mod 8`, `-1` for
/// `a ≡ 5 mod 8`, and `0` for `a ≡ 0 mod 4`.
pub fn chi(p: i64, a: i64) -> Result<i8> {
    if p == 2 {
        return match a.rem_euclid(8) {
            1 => Ok(1),
            5 => Ok(-1),
            0 | 4 => Ok(0),
            _ => Err(Error::Chi2Undefined(a)),
        };
    }
    if p < 2 || !is_prime(p as u64) {
        return Err(Error::NotPrime(p));
    }
    let r = a.rem_euclid(p) as u64;
    if r == 0 {
        return Ok(0);
    }
    let e = pow_mod(r, (p as u64 - 1) / 2, p as u64);
    Ok(if e == 1 { 1 } else { -1 })
}

/// `(g, x, y)` with `g = gcd(a, b) >= 0` and `a x + b y = g`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut x0, mut x1) = (1i128, 0i128);
    let (mut y0, mut y1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (r0, x0, y0) = (-r0, -x0, -y0);
    }
    (r0 as i64, x0 as i64, y0 as i64)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a, b).0
}

/// Bezout pair `(a, b)` with `a r + b s = 1`, canonicalized to `0 <= a < s`
/// (so `(0, 1)` when `s = 1`).
pub fn bezout(r: i64, s: i64) -> Result<(i64, i64)> {
    if r <= 0 || s <= 0 {
        return Err(Error::InvalidArgument(format!(
            "bezout needs positive inputs, got ({r}, {s})"
        )));
    }
    let (g, x, _) = ext_gcd(r, s);
    if g != 1 {
        return Err(Error::NotCoprime { r, s });
    }
    let a = x.rem_euclid(s);
    // b = (1 - a r) / s, exact by construction
    let ar = (a as i128) * (r as i128);
    let b = (1 - ar) / s as i128;
    let b = i64::try_from(b).map_err(|_| Error::Overflow("bezout"))?;
    Ok((a, b))
}

/// 2×2 integer matrix, row-major: `[[m00, m01], [m10, m11]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2(pub [[i64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1, 0], [0, 1]]);

    pub const fn new(m00: i64, m01: i64, m10: i64, m11: i64) -> Mat2 {
        Mat2([[m00, m01], [m10, m11]])
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    pub fn checked_det(&self) -> Result<i64> {
        let [[a, b], [c, d]] = self.0;
        let det = (a as i128) * (d as i128) - (b as i128) * (c as i128);
        i64::try_from(det).map_err(|_| Error::Overflow("determinant"))
    }

    pub fn transpose(&self) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        Mat2::new(a, c, b, d)
    }

    pub fn checked_mul(&self, rhs: &Mat2) -> Result<Mat2> {
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let v = (self.0[i][0] as i128) * (rhs.0[0][j] as i128)
                    + (self.0[i][1] as i128) * (rhs.0[1][j] as i128);
                *cell = i64::try_from(v).map_err(|_| Error::Overflow("matrix product"))?;
            }
        }
        Ok(Mat2(out))
    }

    /// Panicking product for matrices known to be small.
    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        self.checked_mul(rhs).expect("matrix product overflow")
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn unimodular_inverse(&self) -> Option<Mat2> {
        let [[a, b], [c, d]] = self.0;
        match self.det() {
            1 => Some(Mat2::new(d, -b, -c, a)),
            -1 => Some(Mat2::new(-d, b, c, -a)),
            _ => None,
        }
    }

    /// Adjugate, so that `m * m.adjugate() = det(m) * I`.
    pub fn adjugate(&self) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        Mat2::new(d, -b, -c, a)
    }

    pub fn apply(&self, v: [i64; 2]) -> [i64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    pub fn column(&self, j: usize) -> [i64; 2] {
        [self.0[0][j], self.0[1][j]]
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// Smith normal form `left · m · right = diag(d1, d2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Snf {
    pub d1: i64,
    pub d2: i64,
    pub left: Mat2,
    pub right: Mat2,
}

fn checked(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow("smith normal form"))
}

/// Smith normal form of a non-singular 2×2 integer matrix.
///
/// Returns positive `d1 | d2` with `d1 d2 = |det m|` and unimodular
/// transforms. A matrix that is already `diag(d1, d2)` with `0 < d1 | d2`
/// comes back with identity transforms.
pub fn snf_2x2(m: &Mat2) -> Result<Snf> {
    if m.checked_det()? == 0 {
        return Err(Error::Singular);
    }
    let mut a = m.0.map(|row| row.map(|x| x as i128));
    let mut left = [[1i128, 0], [0, 1]];
    let mut right = [[1i128, 0], [0, 1]];

    loop {
        // pivot: smallest non-zero entry, moved to (0, 0)
        let (mut pi, mut pj) = (0, 0);
        let mut best = i128::MAX;
        for i in 0..2 {
            for j in 0..2 {
                if a[i][j] != 0 && a[i][j].abs() < best {
                    best = a[i][j].abs();
                    (pi, pj) = (i, j);
                }
            }
        }
        if pi == 1 {
            a.swap(0, 1);
            left.swap(0, 1);
        }
        if pj == 1 {
            for row in a.iter_mut().chain(right.iter_mut()) {
                row.swap(0, 1);
            }
        }
        let p = a[0][0];
        let mut dirty = false;
        if a[1][0] != 0 {
            let q = a[1][0].div_euclid(p);
            for j in 0..2 {
                a[1][j] -= q * a[0][j];
                left[1][j] -= q * left[0][j];
            }
            dirty |= a[1][0] != 0;
        }
        if a[0][1] != 0 {
            let q = a[0][1].div_euclid(p);
            for row in a.iter_mut() {
                row[1] -= q * row[0];
            }
            for row in right.iter_mut() {
                row[1] -= q * row[0];
            }
            dirty |= a[0][1] != 0;
        }
        if dirty {
            continue;
        }
        if a[1][1] % a[0][0] != 0 {
            // fold row 1 into row 0 and go again
            for j in 0..2 {
                a[0][j] += a[1][j];
                left[0][j] += left[1][j];
            }
            continue;
        }
        break;
    }
    for i in 0..2 {
        if a[i][i] < 0 {
            for j in 0..2 {
                a[i][j] = -a[i][j];
                left[i][j] = -left[i][j];
            }
        }
    }
    let to_mat = |x: [[i128; 2]; 2]| -> Result<Mat2> {
        Ok(Mat2::new(
            checked(x[0][0])?,
            checked(x[0][1])?,
            checked(x[1][0])?,
            checked(x[1][1])?,
        ))
    };
    Ok(Snf {
        d1: checked(a[0][0])?,
        d2: checked(a[1][1])?,
        left: to_mat(left)?,
        right: to_mat(right)?,
    })
}
