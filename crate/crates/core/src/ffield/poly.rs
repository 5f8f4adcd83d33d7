//! Dense polynomials over `F_p`, coefficients stored low degree first.
//!
//! Only what field construction needs: reduction, multiplication modulo a
//! monic polynomial, gcd, and powers of `t`.

pub(crate) type Poly = Vec<u32>;

pub(crate) fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn inv_mod_p(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod_p(a, p - 2, p)
}

pub(crate) fn pow_mod_p(a: u32, mut e: u32, p: u32) -> u32 {
    let p = p as u64;
    let mut base = a as u64 % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u32
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let len = a.len().max(b.len());
    let mut out: Poly = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let mut out: Poly = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod_p(m[dm], p) as u64;
    let p64 = p as u64;
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] as u64 * lead_inv % p64;
        let shift = top - dm;
        for (j, &mj) in m.iter().enumerate() {
            let sub = c * mj as u64 % p64;
            r[shift + j] = ((r[shift + j] as u64 + p64 - sub) % p64) as u32;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), m, p)
}

/// Monic gcd.
pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let inv = inv_mod_p(lead, p) as u64;
        for c in x.iter_mut() {
            *c = (*c as u64 * inv % p as u64) as u32;
        }
    }
    x
}

/// `base^e mod m`.
pub(crate) fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Poly {
    let mut acc: Poly = rem(&[1], m, p);
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

/// True when monic `m` of degree `n ≥ 1` is irreducible over `F_p`:
/// `t^{p^n} ≡ t (mod m)` and `gcd(t^{p^k} − t, m) = 1` for `1 ≤ k ≤ n/2`.
pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
    let n = m.len() - 1;
    if n == 1 {
        return true;
    }
    let t: Poly = vec![0, 1];
    let mut frob = rem(&t, m, p);
    for k in 1..=n {
        frob = pow_mod(&frob, p as u64, m, p);
        if k <= n / 2 {
            let g = gcd(&sub(&frob, &t, p), m, p);
            if g.len() != 1 {
                return false;
            }
        }
    }
    sub(&frob, &rem(&t, m, p), p).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remainder_and_gcd() {
        // (t^2 - 1) mod (t - 1) over F_5
        assert!(rem(&[4, 0, 1], &[4, 1], 5).is_empty());
        // gcd(t^2 - 1, t^2 + 2t + 1) = t + 1
        assert_eq!(gcd(&[4, 0, 1], &[1, 2, 1], 5), vec![1, 1]);
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&[3, 3, 0, 1], 5)); // t^3 - 2t - 2
        assert!(is_irreducible(&[2, 0, 1], 5)); // t^2 + 2: -2 = 3 is a non-square
        assert!(!is_irreducible(&[1, 0, 1], 5)); // t^2 + 1 = (t-2)(t-3)
        assert!(!is_irreducible(&[4, 0, 4, 0, 1], 5)); // (t^2+2)(t^2+2)
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // number of monic irreducible quartics over F_5: (5^4 - 5^2)/4 = 150
        let mut count = 0;
        for k in 0..625u32 {
            let m = vec![k % 5, k / 5 % 5, k / 25 % 5, k / 125, 1];
            if is_irreducible(&m, 5) {
                count += 1;
            }
        }
        assert_eq!(count, 150);
    }
}
