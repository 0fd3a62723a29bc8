//! Dense polynomials over Z/p on raw `u64` vectors, lowest degree first.
//!
//! All routines assume `p < 2^32` so products fit in 64 bits and short sums
//! fit in 128; callers with larger moduli use the generic field path.

use num_bigint::BigUint;

pub const MAX_MODULUS: u64 = 1 << 32;

#[inline]
pub fn mulm(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

#[inline]
pub fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn powm(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue modulo a prime.
pub fn invm(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u64
}

pub fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r: Vec<u64> = (0..n)
        .map(|i| addm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut r);
    r
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r: Vec<u64> = (0..n)
        .map(|i| subm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut r);
    r
}

pub fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.iter().map(|&x| mulm(x, c, p)).collect();
    trim(&mut r);
    r
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len() - 1;
    let mut acc = vec![0u128; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += (x * y) as u128;
        }
    }
    let pp = p as u128;
    let mut r: Vec<u64> = acc.into_iter().map(|v| (v % pp) as u64).collect();
    trim(&mut r);
    r
}

/// Quotient and remainder; `b` must be nonzero.
pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let db = b.len() - 1;
    let inv = invm(b[db], p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = mulm(r[i + db], inv, p);
        q[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = subm(r[i + j], mulm(c, bj, p), p);
            }
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.len() < b.len() {
        return a.to_vec();
    }
    div_rem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, invm(lc, p), p),
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Res(a, b) by the Euclidean remainder sequence; zero if either input is zero.
pub fn resultant(a: &[u64], b: &[u64], p: u64) -> u64 {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    if x.is_empty() || y.is_empty() {
        return 0;
    }
    let mut acc = 1u64;
    loop {
        let dx = (x.len() - 1) as u64;
        let dy = (y.len() - 1) as u64;
        if dy == 0 {
            return mulm(acc, powm(y[0], dx, p), p);
        }
        let r = rem(&x, &y, p);
        if r.is_empty() {
            return 0;
        }
        let dr = (r.len() - 1) as u64;
        acc = mulm(acc, powm(*y.last().unwrap(), dx - dr, p), p);
        if dx % 2 == 1 && dy % 2 == 1 {
            acc = subm(0, acc, p);
        }
        x = y;
        y = r;
    }
}

/// Returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
pub fn xgcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => (Vec::new(), s0, t0),
        Some(&lc) => {
            let inv = invm(lc, p);
            (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
        }
    }
}

pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mulm(c, i as u64 % p, p))
        .collect();
    trim(&mut r);
    r
}

pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter()
        .rev()
        .fold(0, |acc, &c| addm(mulm(acc, x, p), c, p))
}

pub fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), f, p)
}

pub fn powmod(base: &[u64], e: &BigUint, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = rem(&[1], f, p);
    let b = rem(base, f, p);
    for i in (0..e.bits()).rev() {
        result = mulmod(&result, &result, f, p);
        if e.bit(i) {
            result = mulmod(&result, &b, f, p);
        }
    }
    result
}

/// Frobenius on Z/p[x]/(f): row `i` holds `x^(i·p) mod f`, so that
/// `h^p mod f = Σ h_i · row_i`.
pub struct Frobenius {
    rows: Vec<Vec<u64>>,
    p: u64,
}

impl Frobenius {
    pub fn new(f: &[u64], p: u64) -> Self {
        let d = f.len() - 1;
        let mut rows = Vec::with_capacity(d);
        rows.push(rem(&[1], f, p));
        if d > 1 {
            let xp = powmod(&[0, 1], &BigUint::from(p), f, p);
            let mut cur = rows[0].clone();
            for _ in 1..d {
                cur = if (p as usize) < d {
                    shift_mod(&cur, p as usize, f, p)
                } else {
                    mulmod(&cur, &xp, f, p)
                };
                rows.push(cur.clone());
            }
        }
        Frobenius { rows, p }
    }

    pub fn apply(&self, h: &[u64]) -> Vec<u64> {
        let p = self.p;
        let width = self.rows.len();
        let mut acc = vec![0u128; width];
        for (i, &c) in h.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &r) in self.rows[i].iter().enumerate() {
                acc[j] += (c * r) as u128;
            }
        }
        let pp = p as u128;
        let mut r: Vec<u64> = acc.into_iter().map(|v| (v % pp) as u64).collect();
        trim(&mut r);
        r
    }
}

/// `a · x^k mod f` for monic-izable `f`, one shift at a time.
fn shift_mod(a: &[u64], k: usize, f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    let inv = invm(f[d], p);
    let mut cur = a.to_vec();
    cur.resize(d, 0);
    for _ in 0..k {
        let top = cur[d - 1];
        for i in (1..d).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            let c = mulm(top, inv, p);
            for i in 0..d {
                cur[i] = subm(cur[i], mulm(c, f[i], p), p);
            }
        }
    }
    trim(&mut cur);
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let p = 101;
        let a = vec![3, 0, 7, 1, 99, 5];
        let b = vec![2, 1, 4];
        let (q, r) = div_rem(&a, &b, p);
        assert_eq!(add(&mul(&q, &b, p), &r, p), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn xgcd_bezout() {
        let p = 13;
        let a = vec![1, 2, 3, 4];
        let b = vec![5, 0, 1];
        let (g, s, t) = xgcd(&a, &b, p);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), g);
        assert_eq!(g, vec![1]);
    }

    #[test]
    fn frobenius_matches_powering() {
        for p in [2u64, 3, 7, 101] {
            let f = vec![1, 3 % p, 0, 2 % p, 1, 0, 1];
            let fr = Frobenius::new(&f, p);
            let h = vec![5 % p, 1, 1, 0, 3 % p];
            let direct = powmod(&h, &BigUint::from(p), &f, p);
            assert_eq!(fr.apply(&h), direct, "p = {p}");
        }
    }
}
