//! Dense polynomials over GF(p), coefficients in ascending degree order.

pub(crate) type Poly = Vec<u32>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Remainder of `a` modulo a nonzero polynomial `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let m = trim(m.to_vec());
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = *r.last().unwrap() as u64 * lead_inv % p as u64;
        for (i, &mc) in m.iter().enumerate() {
            let t = (c * mc as u64) % p as u64;
            let slot = &mut r[shift + i];
            *slot = ((*slot as u64 + p as u64 - t) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^i) mod m`, by repeated p-th powering.
fn frobenius_power_of_x(i: u32, m: &[u32], p: u32) -> Poly {
    let mut acc = rem(&[0, 1], m, p);
    for _ in 0..i {
        acc = pow_mod(&acc, p as u64, m, p);
    }
    acc
}

fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Poly {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Irreducibility of a degree-`l` polynomial over GF(p).
///
/// Degrees up to 4 are settled by trial division with every monic polynomial
/// of degree at most l/2; larger degrees use Rabin's test.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = trim(f.to_vec());
    let l = f.len().saturating_sub(1) as u32;
    if l == 0 {
        return false;
    }
    if l == 1 {
        return true;
    }
    if l <= 4 {
        for deg in 1..=l / 2 {
            let count = (p as u64).pow(deg);
            for idx in 0..count {
                let mut g = Vec::with_capacity(deg as usize + 1);
                let mut rest = idx;
                for _ in 0..deg {
                    g.push((rest % p as u64) as u32);
                    rest /= p as u64;
                }
                g.push(1);
                if rem(&f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        return true;
    }
    let x = vec![0, 1];
    if !sub(&frobenius_power_of_x(l, &f, p), &rem(&x, &f, p), p).is_empty() {
        return false;
    }
    prime_factors(l).into_iter().all(|r| {
        let h = sub(&frobenius_power_of_x(l / r, &f, p), &x, p);
        gcd(&f, &h, p).len() == 1
    })
}
