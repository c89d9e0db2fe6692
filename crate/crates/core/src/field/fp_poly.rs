//! Dense polynomials over a prime field `F_p`, stored little-endian as `Vec<u32>`.
//!
//! These are the workhorse for field moduli and for the coefficient ring `A = F_q[t]`.

pub fn trim(f: &mut Vec<u32>) {
    while let Some(&0) = f.last() {
        f.pop();
    }
}

pub fn degree(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn inv_mod_p(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod_p(a % p, p as u64 - 2, p)
}

pub fn pow_mod_p(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = (a % p) as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    a = r as u32;
    a
}

pub fn add(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let n = f.len().max(g.len());
    let mut r: Vec<u32> = (0..n)
        .map(|i| (f.get(i).copied().unwrap_or(0) + g.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut r);
    r
}

pub fn neg(f: &[u32], p: u32) -> Vec<u32> {
    f.iter().map(|&c| (p - c % p) % p).collect()
}

pub fn sub(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    add(f, &neg(g, p), p)
}

pub fn scale(f: &[u32], c: u32, p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = f.iter().map(|&x| (x as u64 * c as u64 % p as u64) as u32).collect();
    trim(&mut r);
    r
}

pub fn mul(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            acc[i + j] += a as u64 * b as u64;
        }
        if i % 64 == 63 {
            for x in acc.iter_mut() {
                *x %= p as u64;
            }
        }
    }
    let mut r: Vec<u32> = acc.into_iter().map(|x| (x % p as u64) as u32).collect();
    trim(&mut r);
    r
}

/// Euclidean division; panics on a zero divisor.
pub fn divrem(f: &[u32], g: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let dg = degree(g).expect("division by zero polynomial");
    let mut r: Vec<u32> = f.to_vec();
    trim(&mut r);
    if r.len() <= dg {
        return (Vec::new(), r);
    }
    let lc_inv = inv_mod_p(g[dg], p) as u64;
    let mut q = vec![0u32; r.len() - dg];
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let c = (r[dr] as u64 * lc_inv % p as u64) as u32;
        q[dr - dg] = c;
        for (j, &b) in g.iter().enumerate().take(dg + 1) {
            let s = (c as u64 * b as u64 % p as u64) as u32;
            r[dr - dg + j] = (r[dr - dg + j] + p - s) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    divrem(f, g, p).1
}

pub fn monic(f: &[u32], p: u32) -> Vec<u32> {
    match degree(f) {
        None => Vec::new(),
        Some(d) => scale(f, inv_mod_p(f[d], p), p),
    }
}

pub fn gcd(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Extended gcd: returns `(g, s, t)` with `s f + t h = g`, `g` monic.
pub fn xgcd(f: &[u32], h: &[u32], p: u32) -> (Vec<u32>, Vec<u32>, Vec<u32>) {
    let (mut r0, mut r1) = (f.to_vec(), h.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![1u32], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u32]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match degree(&r0) {
        None => (Vec::new(), s0, t0),
        Some(d) => {
            let c = inv_mod_p(r0[d], p);
            (scale(&r0, c, p), scale(&s0, c, p), scale(&t0, c, p))
        }
    }
}

pub fn mulmod(f: &[u32], g: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(f, g, p), m, p)
}

pub fn powmod(f: &[u32], mut e: u128, m: &[u32], p: u32) -> Vec<u32> {
    let mut result = rem(&[1], m, p);
    let mut base = rem(f, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &base, m, p);
        }
        base = mulmod(&base, &base, m, p);
        e >>= 1;
    }
    result
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test over `F_p`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = match degree(f) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    // x^(p^k) mod f, iterated
    let frob = |h: &Vec<u32>| powmod(h, p as u128, f, p);
    let mut xp = vec![x.clone()];
    for _ in 0..n {
        let next = frob(xp.last().unwrap());
        xp.push(next);
    }
    if sub(&xp[n], &x, p).iter().any(|&c| c != 0) && !rem(&sub(&xp[n], &x, p), f, p).is_empty() {
        return false;
    }
    for l in prime_factors(n as u64) {
        let k = n / l as usize;
        let g = gcd(f, &sub(&xp[k], &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Integer code of a polynomial: `sum c_i p^i`.
pub fn code(f: &[u32], p: u32) -> u128 {
    f.iter().rev().fold(0u128, |acc, &c| acc * p as u128 + c as u128)
}

pub fn from_code(mut c: u128, p: u32, len: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(len);
    for _ in 0..len {
        v.push((c % p as u128) as u32);
        c /= p as u128;
    }
    v
}

/// The monic irreducible of degree `n` over `F_p` with the smallest integer code.
pub fn smallest_irreducible(p: u32, n: usize) -> Vec<u32> {
    assert!(n >= 1);
    let count = (p as u128).pow(n as u32);
    for c in 0..count {
        let mut f = from_code(c, p, n);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible of every degree exists")
}

/// Number of monic irreducibles of degree `n` over a field of size `q` (necklace formula).
pub fn count_irreducibles(q: u128, n: u32) -> u128 {
    let mut total: i128 = 0;
    for d in 1..=n {
        if n % d == 0 {
            total += mobius(d as u64) as i128 * (q.pow(n / d)) as i128;
        }
    }
    (total / n as i128) as u128
}

pub fn mobius(n: u64) -> i32 {
    let mut m = n;
    let mut res = 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return 0;
            }
            res = -res;
        }
        d += 1;
    }
    if m > 1 {
        res = -res;
    }
    res
}
