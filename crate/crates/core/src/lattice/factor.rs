//! Trial-division factorization and the two-squares membership test.

use serde::{Deserialize, Serialize};

/// Integer square root, exact for every `u64`.
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
/// `factorize(0)` and `factorize(1)` are empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    let mut p = 3;
    while p <= n / p {
        push(p, &mut n);
        p += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub is_member: bool,
    pub factorization: Vec<(u64, u32)>,
}

/// Decides whether `m` is a sum of two squares: every prime `q ≡ 3 (mod 4)`
/// must divide `m` to an even power.
pub fn classify_sum_of_two_squares(m: u64) -> Classification {
    let factorization = factorize(m);
    let is_member = m > 0 && factorization.iter().all(|&(p, e)| p % 4 != 3 || e % 2 == 0);
    Classification {
        is_member,
        factorization,
    }
}

/// `r₂(m) = 4 Π (αᵢ + 1)` over the primes `pᵢ ≡ 1 (mod 4)`; zero when `m`
/// is not a sum of two squares.
pub fn r2_from_factorization(factorization: &[(u64, u32)]) -> usize {
    if factorization.iter().any(|&(p, e)| p % 4 == 3 && e % 2 == 1) {
        return 0;
    }
    4 * factorization
        .iter()
        .filter(|&&(p, _)| p % 4 == 1)
        .map(|&(_, e)| e as usize + 1)
        .product::<usize>()
}
