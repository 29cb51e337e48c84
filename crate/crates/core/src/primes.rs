//! Small prime utilities.

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
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
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in SMALL {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Least prime strictly greater than `n`.
pub fn next_prime_after(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut p = 1;
    while out.len() < count {
        p = next_prime_after(p);
        out.push(p);
    }
    out
}

/// All primes `≤ bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_trial_division() {
        let naive = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), naive(n), "{n}");
        }
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn small_lists() {
        assert_eq!(first_primes(5), vec![2, 3, 5, 7, 11]);
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        assert_eq!(next_prime_after(125), 127);
    }
}
